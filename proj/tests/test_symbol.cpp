#include "toescat/errors.hpp"
#include "toescat/intervals.hpp"
#include "toescat/polynomial.hpp"
#include "toescat/quadrature.hpp"
#include "toescat/symbol.hpp"
#include <doctest.h>
#include <algorithm>
#include <cmath>

using namespace toescat;
using cd = std::complex<double>;

namespace {

//! Fourier coefficient by adaptive quadrature of each piece.
cd coefficient_oracle(const PiecewiseSymbol &s, int n) {
  cd total = 0.0;
  for (const auto &p : s.pieces())
    total += adaptive_integrate(
        [&](double x) {
          return p.value_local(x - p.left) * std::exp(cd(0.0, -n * x));
        },
        p.left, p.right, 1e-13);
  return total / two_pi;
}

std::vector<PiecewiseSymbol> builtins() {
  return {PiecewiseSymbol::cosine(), PiecewiseSymbol::fig3(),
          PiecewiseSymbol::indicator(0.0, pi),
          PiecewiseSymbol::indicator(1.0, 5.5)};
}

} // namespace

TEST_CASE("interval sets merge, intersect and subtract") {
  IntervalSet a{{0.0, 1.0}, {2.0, 4.0}};
  IntervalSet b{{0.5, 2.5}};
  CHECK(a.unite(b).parts().size() == 1);
  CHECK(a.unite(b).measure() == doctest::Approx(4.0));
  CHECK(a.intersect(b).measure() == doctest::Approx(1.0));
  CHECK(a.subtract(b).measure() == doctest::Approx(2.0));
  IntervalSet p;
  p.add({1.0, 1.0});
  CHECK_FALSE(p.empty());
  CHECK(p.without_points().empty());
  CHECK(a.contains(1.0));
  CHECK_FALSE(a.contains_open(1.0));
}

TEST_CASE("polynomial roots, derivative and recentring") {
  // (s - 0.3)(s - 0.7)(s + 2) = s^3 + s^2 - 1.79 s + 0.42
  const poly::Coeffs c{0.42, -1.79, 1.0, 1.0};
  const auto r = poly::real_roots(c, 0.0, 1.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(r[1] == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(poly::degree(poly::derivative(c)) == 2);
  CHECK(poly::degree({0.0, 0.0}) == -1);
  const auto q = poly::recenter(c, 0.5, -2.0);
  for (double s : {-1.0, 0.1, 0.8})
    CHECK(poly::eval(q, s) == doctest::Approx(poly::eval(c, 0.5 - 2.0 * s)));
  CHECK(poly::real_roots({1.0, 0.0, 1.0}, -5.0, 5.0).empty());
}

TEST_CASE("fig3 evaluation and one-sided limits") {
  const auto f = PiecewiseSymbol::fig3();
  CHECK(f.eval(1.0) == doctest::Approx(0.5));
  CHECK(f.eval(2.0, Side::Left) == doctest::Approx(1.0));
  CHECK(f.eval(2.0, Side::Right) == doctest::Approx(3.0));
  CHECK_THROWS_AS(f.eval(2.0), SideRequired);
  CHECK(f.eval(4.0) == doctest::Approx(4.0));
  CHECK(f.eval(5.0) == doctest::Approx(4.0 - 2.0 / (two_pi - 4.0)));
  CHECK(PiecewiseSymbol::cosine().eval(0.0) == doctest::Approx(1.0));
  // offsets far below the angle ulp still pick the correct side
  CHECK(f.eval_offset(2.0, -1e-300) == doctest::Approx(1.0));
  CHECK(f.eval_offset(2.0, 1e-300) == doctest::Approx(3.0));
}

TEST_CASE("breakpoint classes") {
  const auto ind = PiecewiseSymbol::indicator(0.0, pi);
  const auto plus = ind.jumps_of(BreakClass::SPlus);
  const auto minus = ind.jumps_of(BreakClass::SMinus);
  REQUIRE(plus.size() == 1);
  REQUIRE(minus.size() == 1);
  CHECK(plus[0].eta == doctest::Approx(pi));
  CHECK(minus[0].eta == doctest::Approx(0.0));

  const auto f = PiecewiseSymbol::fig3();
  CHECK(f.jump_at(0.0).cls == BreakClass::SPlus);
  CHECK(f.jump_at(2.0).cls == BreakClass::SMinus);
  CHECK(f.jump_at(4.0).cls == BreakClass::SZero);
  CHECK(f.jump_at(0.0).jump_interval.lo == doctest::Approx(0.0));
  CHECK(f.jump_at(0.0).jump_interval.hi == doctest::Approx(2.0));
  CHECK_THROWS_AS(f.jump_at(1.0), NotAJump);

  for (const auto &j : PiecewiseSymbol::cosine().jumps())
    CHECK(j.cls == BreakClass::Smooth);

  // a removable breakpoint: x/2 split at 1 into two pieces of the same line
  const PiecewiseSymbol line("split", {0.0, 1.0, 3.0},
                             {{0.0, 0.5}, {0.5, 0.5}, {1.5, -1.5 / (two_pi - 3.0)}});
  CHECK(line.jump_at(1.0).cls == BreakClass::Smooth);
}

TEST_CASE("spectral sets of the built-in symbols") {
  const auto cosine = PiecewiseSymbol::cosine();
  const auto ind = PiecewiseSymbol::indicator(0.0, pi);
  const auto fig3 = PiecewiseSymbol::fig3();
  const auto &c = cosine.spectral_sets();
  CHECK(c.gamma1 == doctest::Approx(-1.0));
  CHECK(c.gamma2 == doctest::Approx(1.0));
  REQUIRE(c.exceptional.size() == 2);
  CHECK(c.exceptional[0] == doctest::Approx(-1.0));
  CHECK(c.exceptional[1] == doctest::Approx(1.0));
  CHECK(c.upsilon.empty());

  const auto &i = ind.spectral_sets();
  CHECK(i.flat_values == std::vector<double>{0.0, 1.0});
  CHECK(i.exceptional == std::vector<double>{0.0, 1.0});
  CHECK(i.upsilon.measure() == doctest::Approx(1.0));
  CHECK(i.sigma_omega.measure() == doctest::Approx(0.0));

  const auto &f = fig3.spectral_sets();
  REQUIRE(f.sigma_omega.parts().size() == 2);
  CHECK(f.sigma_omega.parts()[0].hi == doctest::Approx(1.0));
  CHECK(f.sigma_omega.parts()[1].lo == doctest::Approx(2.0));
  CHECK(f.upsilon.parts().size() == 1);
  CHECK(f.upsilon.parts()[0].hi == doctest::Approx(3.0));
  REQUIRE(f.exceptional.size() == 5);
  for (int k = 0; k < 5; ++k)
    CHECK(f.exceptional[std::size_t(k)] == doctest::Approx(double(k)));
}

TEST_CASE("value range agrees with a dense grid scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_symbol(rng);
    const auto &sets = s.spectral_sets();
    double lo = INFINITY, hi = -INFINITY;
    int outside = 0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
      const double x = two_pi * (k + 0.5) / n;
      if (s.breakpoint_index(x) >= 0)
        continue;
      const double v = s.eval(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      const bool flat = std::any_of(
          sets.flat_values.begin(), sets.flat_values.end(),
          [&](double f) { return std::abs(f - v) < 1e-12; });
      if (!flat && !sets.sigma_omega.contains(v)) {
        ++outside;
      }
    }
    CHECK(outside == 0);
    CHECK(sets.gamma1 <= lo + 1e-12);
    CHECK(sets.gamma2 >= hi - 1e-12);
    CHECK(sets.gamma1 == doctest::Approx(lo).epsilon(1e-3));
    CHECK(sets.gamma2 == doctest::Approx(hi).epsilon(1e-3));
    if (!sets.upsilon.empty()) {
      CHECK(sets.upsilon.parts().front().lo >= sets.gamma1 - 1e-12);
      CHECK(sets.upsilon.parts().back().hi <= sets.gamma2 + 1e-12);
    }
    for (double t : sets.thresholds)
      CHECK((t >= sets.gamma1 - 1e-12 && t <= sets.gamma2 + 1e-12));
    double width = 0.0;
    for (const auto &p : s.pieces())
      width += p.width();
    CHECK(width == doctest::Approx(two_pi).epsilon(1e-12));
  }
}

TEST_CASE("Fourier coefficients match numerical quadrature") {
  for (const auto &s : builtins())
    for (int n = -64; n <= 64; n += 7)
      CHECK(std::abs(s.coefficient(n) - coefficient_oracle(s, n)) < 1e-10);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = random_symbol(rng);
    for (int n : {0, 1, 5, 40, -13})
      CHECK(std::abs(s.coefficient(n) - coefficient_oracle(s, n)) < 1e-10);
  }
}

TEST_CASE("closed-form coefficients and symmetries") {
  const auto c = PiecewiseSymbol::cosine();
  CHECK(std::abs(c.coefficient(1) - 0.5) < 1e-15);
  CHECK(std::abs(c.coefficient(-1) - 0.5) < 1e-15);
  CHECK(std::abs(c.coefficient(0)) < 1e-15);
  CHECK(std::abs(c.coefficient(3)) < 1e-15);

  const double x1 = 0.7, x2 = 2.9;
  const auto ind = PiecewiseSymbol::indicator(x1, x2);
  CHECK(std::abs(ind.coefficient(0) - (x2 - x1) / two_pi) < 1e-14);
  for (int n : {1, 2, 17, -5}) {
    const cd expect = (std::exp(cd(0, -n * x1)) - std::exp(cd(0, -n * x2))) /
                      (cd(0, two_pi * n));
    CHECK(std::abs(ind.coefficient(n) - expect) < 1e-14);
  }

  const auto fc = PiecewiseSymbol::fig3().fourier_coeffs(32);
  for (int n = 1; n <= 64; ++n)
    CHECK(std::abs(fc(-n) - std::conj(fc(n))) <= 1e-12 * std::max(1.0, std::abs(fc(n))));
  CHECK(std::abs(fc(0).imag()) < 1e-15);

  const auto k = constant_coeffs(2.5, 4);
  CHECK(k(0) == cd(2.5));
  CHECK(k(3) == cd(0.0));
}

TEST_CASE("reflection, JSON round trip and validation") {
  const auto f = PiecewiseSymbol::fig3();
  const auto r = f.reflect();
  for (double x : {0.3, 1.7, 2.5, 5.0})
    CHECK(r.eval(x) == doctest::Approx(f.eval(two_pi - x)));

  const auto back = PiecewiseSymbol::from_json(f.to_json());
  for (double x : {0.3, 1.7, 2.5, 5.0})
    CHECK(back.eval(x) == f.eval(x));
  CHECK(PiecewiseSymbol::load("indicator:0:3.14159265358979").jumps_of(BreakClass::SPlus).size() == 1);
  CHECK(PiecewiseSymbol::builtin("cosine").is_cosine());

  CHECK_THROWS_AS(PiecewiseSymbol("flat", {0.0}, {{1.0}}), InvalidSymbol);
  CHECK_THROWS_AS(PiecewiseSymbol("bad", {1.0, 0.5}, {{0.0}, {1.0}}), InvalidSymbol);
  CHECK_THROWS_AS(PiecewiseSymbol("deg", {0.0}, {poly::Coeffs(14, 0.1)}), InvalidSymbol);
  CHECK_THROWS_AS(PiecewiseSymbol::builtin("nonsense"), Error);
}

TEST_CASE("random symbols are reproducible from the seed") {
  std::mt19937_64 a(42), b(42);
  const auto s = random_symbol(a), t = random_symbol(b);
  CHECK(s.breakpoints() == t.breakpoints());
  for (double x : {0.1, 2.0, 4.4})
    if (s.breakpoint_index(x) < 0)
      CHECK(s.eval(x) == t.eval(x));
}

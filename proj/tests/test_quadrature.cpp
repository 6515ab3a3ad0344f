#include "toescat/errors.hpp"
#include "toescat/quadrature.hpp"
#include "toescat/symbol.hpp"
#include <doctest.h>
#include <cmath>

using namespace toescat;
using cd = std::complex<double>;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int order : {4, 8, 16}) {
    const auto &r = gauss_legendre(order);
    REQUIRE(int(r.x.size()) == order);
    for (int p = 0; p < 2 * order; ++p) {
      double sum = 0.0;
      for (int i = 0; i < order; ++i)
        sum += r.w[std::size_t(i)] * std::pow(r.x[std::size_t(i)], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive integration") {
  const auto v = adaptive_integrate([](double x) { return cd(std::exp(x), 0.0); },
                                    0.0, 1.0, 1e-13);
  CHECK(v.real() == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  const auto osc = adaptive_integrate(
      [](double x) { return std::exp(cd(0.0, 40.0 * x)); }, 0.0, pi, 1e-12);
  CHECK(std::abs(osc - (std::exp(cd(0.0, 40.0 * pi)) - 1.0) / cd(0.0, 40.0)) < 1e-12);
  // sharp peak: int dx / (a^2 + x^2) over [-1, 1] = (2/a) atan(1/a)
  const double a = 0.01;
  const auto s = adaptive_integrate(
      [a](double x) { return cd(1.0 / (a * a + x * x)); }, -1.0, 1.0, 1e-12, 30);
  CHECK(s.real() == doctest::Approx(2.0 / a * std::atan(1.0 / a)).epsilon(1e-11));
  CHECK_THROWS_AS(
      adaptive_integrate([](double x) { return cd(1.0 / x); }, 0.0, 1.0, 1e-12, 6),
      QuadratureNonConvergence);
}

TEST_CASE("log(1 - e^{i delta}) on the principal branch") {
  for (double d : {1e-9, 0.3, 2.0, -1.0, 3.1, 6.0}) {
    // |1 - e^{id}| = 2|sin(d/2)|, arg = (d - pi)/2 for d in (0, 2pi)
    const double dw = d < 0.0 ? d + two_pi : d;
    const cd ref(std::log(2.0 * std::abs(std::sin(0.5 * dw))), 0.5 * (dw - pi));
    CHECK(std::abs(log_one_minus(d) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
  }
  // accurate where 1 - e^{i delta} cancels
  CHECK(log_one_minus(1e-20).real() == doctest::Approx(std::log(1e-20)).epsilon(1e-14));
}

TEST_CASE("circle quadrature without anchors") {
  CircleQuadratureConfig cfg;
  cfg.far_panels = 64;
  const CircleQuadrature q({}, cfg);
  double total = 0.0;
  cd first = 0.0;
  for (const auto &n : q.nodes()) {
    total += n.weight;
    first += n.weight * std::exp(cd(0.0, 3.0 * n.angle));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(first) < 1e-13);
}

TEST_CASE("graded circle quadrature resolves endpoint singularities") {
  CircleQuadratureConfig cfg;
  cfg.far_panels = 128;
  const CircleQuadrature q({{0.0, 40.0}, {2.5, 40.0}}, cfg);
  double total = 0.0, sing = 0.0;
  for (const auto &n : q.nodes()) {
    total += n.weight;
    const double r = std::exp(q.log_factor(n, 0.0).real()); // |1 - e^{ix}|
    sing += n.weight / std::sqrt(r);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  // (1/2pi) int |1 - e^{ix}|^{-1/2} dx = Gamma(1/2) / Gamma(3/4)^2
  const double exact = std::tgamma(0.5) / std::pow(std::tgamma(0.75), 2);
  CHECK(sing == doctest::Approx(exact).epsilon(1e-10));

  // graded nodes keep their offset exactly
  int graded = 0;
  for (const auto &n : q.nodes())
    if (n.anchor == 1) {
      ++graded;
      CHECK(q.offset_from(n, 2.5) == n.offset);
    }
  CHECK(graded > 0);

  CHECK_THROWS_AS(CircleQuadrature({{1.0, 10.0}, {1.0 + 1e-3, 10.0}}, cfg),
                  InvalidConfig);
}

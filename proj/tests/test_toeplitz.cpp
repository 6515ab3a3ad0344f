#include "toescat/errors.hpp"
#include "toescat/toeplitz.hpp"
#include <Eigen/Eigenvalues>
#include <doctest.h>
#include <cmath>

using namespace toescat;
using cd = std::complex<double>;

namespace {

Eigen::VectorXd reference_eigenvalues(const TruncatedToeplitz &T) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.matrix(),
                                                      Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

} // namespace

TEST_CASE("small truncations") {
  const auto k = TruncatedToeplitz::build(constant_coeffs(2.5, 8), 5);
  CHECK((k.matrix() - 2.5 * Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-15);

  const auto c = TruncatedToeplitz::build(PiecewiseSymbol::cosine(), 2);
  CHECK(std::abs(c.matrix()(0, 0)) < 1e-15);
  CHECK(std::abs(c.matrix()(0, 1) - 0.5) < 1e-15);
  CHECK(c.eigenvalues()(0) == doctest::Approx(-0.5));
  CHECK(c.eigenvalues()(1) == doctest::Approx(0.5));

  const auto i = TruncatedToeplitz::build(PiecewiseSymbol::indicator(0.0, pi), 1);
  CHECK(std::abs(i.matrix()(0, 0) - 0.5) < 1e-15);

  CHECK_THROWS_AS(TruncatedToeplitz(std::vector<cd>{1.0}, 0), InvalidConfig);
  CHECK_THROWS_AS(TruncatedToeplitz(std::vector<cd>{1.0}, 3), InvalidConfig);
}

TEST_CASE("cosine eigenvalues follow the closed form") {
  for (int n : {7, 64}) {
    const auto T = TruncatedToeplitz::build(PiecewiseSymbol::cosine(), n);
    const auto &ev = T.eigenvalues();
    for (int k = 1; k <= n; ++k)
      CHECK(ev(n - k) == doctest::Approx(std::cos(k * pi / (n + 1))).epsilon(1e-12));
  }
}

TEST_CASE("eigensystem agrees with a reference solver") {
  for (const auto &s : {PiecewiseSymbol::fig3(), PiecewiseSymbol::indicator(1.0, 4.0)}) {
    const auto T = TruncatedToeplitz::build(s, 80);
    const auto ref = reference_eigenvalues(T);
    CHECK((T.eigenvalues() - ref).cwiseAbs().maxCoeff() < 1e-12);
    const auto &sys = T.eigensystem();
    const Eigen::MatrixXcd V = sys.vectors;
    CHECK((V.adjoint() * V - Eigen::MatrixXcd::Identity(80, 80)).norm() < 1e-11);
    CHECK((T.matrix() * V - V * sys.values.asDiagonal()).norm() < 1e-11);
    // spectrum of every truncation lies in the numerical range of the symbol
    const auto &sets = s.spectral_sets();
    CHECK(ref(0) >= sets.gamma1 - 1e-12);
    CHECK(ref(79) <= sets.gamma2 + 1e-12);
  }
}

TEST_CASE("eigenvalues of nested truncations interlace") {
  const auto s = PiecewiseSymbol::fig3();
  const auto a = reference_eigenvalues(TruncatedToeplitz::build(s, 40));
  const auto b = reference_eigenvalues(TruncatedToeplitz::build(s, 41));
  for (int k = 0; k < 40; ++k) {
    CHECK(b(k) <= a(k) + 1e-12);
    CHECK(a(k) <= b(k + 1) + 1e-12);
  }
}

TEST_CASE("counting eigenvalues in a band") {
  const auto s = PiecewiseSymbol::fig3();
  const auto T = TruncatedToeplitz::build(s, 200);
  const auto ref = reference_eigenvalues(T);
  int expect = 0;
  for (int k = 0; k < ref.size(); ++k)
    expect += ref(k) > 3.1 && ref(k) < 3.7;
  CHECK(T.count(3.1, 3.7) == expect);

  CHECK(szego_limit(PiecewiseSymbol::cosine(), -0.5, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(szego_limit(s, 1.2, 1.8) == doctest::Approx(0.0));
  // the preimage of (3.1, 3.7) is (2.2, 3.4) on the rising piece plus a
  // stretch of the falling piece of width 0.3 (2pi - 4)
  CHECK(szego_limit(s, 3.1, 3.7) ==
        doctest::Approx((1.2 + 0.3 * (two_pi - 4.0)) / two_pi));
  CHECK_THROWS_AS(szego_limit(PiecewiseSymbol::indicator(0.0, pi), 0.0, 0.5),
                  BoundaryMassNonzero);

  const auto r = counting_report(PiecewiseSymbol::cosine(), 512, -0.5, 0.5);
  CHECK(r.n == 512);
  CHECK(r.ratio == doctest::Approx(double(r.count) / 512));
  CHECK(r.deviation == doctest::Approx(std::abs(r.ratio - r.limit)));
  CHECK(r.deviation < 0.01);
}

TEST_CASE("Hankel blocks") {
  const auto c = hankel_block(PiecewiseSymbol::cosine(), 16);
  CHECK(numerical_rank(c) == 1);
  CHECK(c.singular_values(0) == doctest::Approx(0.5).epsilon(1e-14));

  // indicator of (0, pi): c_k = 1/(i pi k) for odd k, zero for even k
  std::vector<cd> pos(2 * 128 + 1);
  for (int k = 1; k < int(pos.size()); ++k)
    pos[std::size_t(k)] = k % 2 ? 1.0 / cd(0.0, pi * k) : cd(0.0);
  const auto ref = hankel_block(pos, 128);
  const auto h = hankel_block(PiecewiseSymbol::indicator(0.0, pi), 128);
  CHECK((h.H - ref.H).cwiseAbs().maxCoeff() < 1e-14);
  // the truncated singular values decay geometrically into rounding noise
  CHECK(h.singular_values(0) == doctest::Approx(0.43879029).epsilon(1e-6));
  CHECK(h.singular_values(63) < 1e-13 * h.singular_values(0));
  CHECK(decay_exponent(h) > 5.0);
  CHECK(std::isinf(decay_exponent(hankel_block(PiecewiseSymbol::indicator(0.0, pi), 512))));

  HankelBlock power;
  power.n = 64;
  power.singular_values.resize(64);
  for (int k = 1; k <= 64; ++k)
    power.singular_values(k - 1) = std::pow(double(k), -1.5);
  CHECK(decay_exponent(power) == doctest::Approx(1.5).epsilon(1e-12));

  // degree-3 trigonometric polynomial
  std::vector<cd> trig(64, 0.0);
  trig[1] = 0.3;
  trig[2] = cd(0.0, 0.2);
  trig[3] = 0.1;
  CHECK(numerical_rank(hankel_block(trig, 32)) == 3);
  CHECK_THROWS_AS(hankel_block(PiecewiseSymbol::cosine(), 4), InvalidConfig);
}

TEST_CASE("flip equivalence") {
  for (const auto &s : {PiecewiseSymbol::cosine(), PiecewiseSymbol::fig3(),
                        PiecewiseSymbol::indicator(0.0, pi)})
    CHECK(flip_equivalence_check(s, 64) <= 1e-12);
}

TEST_CASE("commutator with the Hardy projection") {
  const int n = 64;
  std::vector<cd> flat(2 * n + 1, 0.0);
  flat[std::size_t(n)] = 3.0;
  CHECK(commutator_trace_norm(flat, n) < 1e-13);
  // [P, cos] maps e_{-1} -> e_0 / 2 and e_0 -> -e_{-1} / 2
  CHECK(commutator_trace_norm(PiecewiseSymbol::cosine(), n) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(commutator_trace_norm(PiecewiseSymbol::cosine(), 4 * n) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto ind = PiecewiseSymbol::indicator(0.0, pi);
  CHECK_THROWS_AS(commutator_trace_norm(ind, n), DomainError);
  const double small = commutator_trace_norm(ind, 32, true);
  const double large = commutator_trace_norm(ind, 256, true);
  CHECK(large > small + 0.1);
}

TEST_CASE("unitary evolution") {
  const auto T = TruncatedToeplitz::build(PiecewiseSymbol::fig3(), 48);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(48);
  f(0) = 1.0;
  f(5) = cd(0.0, 2.0);
  const auto a = T.evolve(T.evolve(f, 1.3), 2.1);
  const auto b = T.evolve(f, 3.4);
  CHECK((a - b).norm() < 1e-12);
  CHECK(b.norm() == doctest::Approx(f.norm()).epsilon(1e-13));
  CHECK((T.evolve(b, -3.4) - f).norm() < 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.matrix());
  const Eigen::VectorXcd phase =
      (es.eigenvalues().cast<cd>() * cd(0.0, -3.4)).array().exp().matrix();
  const Eigen::VectorXcd ref =
      es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() * f;
  CHECK((b - ref).norm() < 1e-11);
}

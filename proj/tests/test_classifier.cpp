#include "oracles.hpp"
#include "toescat/classifier.hpp"
#include "toescat/errors.hpp"
#include <doctest.h>

using namespace toescat;

namespace {

void check_arc(const Arc &a, double alpha, double beta) {
  CHECK(a.alpha == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(a.beta == doctest::Approx(beta).epsilon(1e-12));
}

} // namespace

TEST_CASE("admissibility") {
  const auto f = PiecewiseSymbol::fig3();
  CHECK(is_admissible(f, 0.2, 0.8));
  CHECK_FALSE(is_admissible(f, 0.8, 1.2)); // threshold 1 inside
  CHECK_FALSE(is_admissible(f, -0.5, 0.5)); // leaves the spectrum
  CHECK_FALSE(is_admissible(f, 0.8, 0.2));
  CHECK_FALSE(is_admissible(PiecewiseSymbol::cosine(), 0.9, 1.0)); // gamma2
  CHECK_THROWS_AS(preimage_arcs(f, 0.5, 1.5), AdmissibilityViolated);
}

TEST_CASE("preimage arcs") {
  const auto c = preimage_arcs(PiecewiseSymbol::cosine(), -0.5, 0.5);
  REQUIRE(c.plus.size() == 1);
  REQUIRE(c.minus.size() == 1);
  check_arc(c.plus[0], pi / 3, 2 * pi / 3);
  check_arc(c.minus[0], 4 * pi / 3, 5 * pi / 3);

  const auto f = preimage_arcs(PiecewiseSymbol::fig3(), 3.2, 3.8);
  REQUIRE(f.minus.size() == 1);
  REQUIRE(f.plus.size() == 1);
  check_arc(f.minus[0], 2.4, 3.6);
  const double w = two_pi - 4.0;
  check_arc(f.plus[0], 4.0 + 0.1 * w, 4.0 + 0.4 * w);

  const auto i = preimage_arcs(PiecewiseSymbol::indicator(0.0, pi), 0.2, 0.8);
  CHECK(i.plus.empty());
  CHECK(i.minus.empty());
}

TEST_CASE("multiplicity of the built-in symbols") {
  const auto c = multiplicity(PiecewiseSymbol::cosine(), -0.5, 0.5);
  CHECK(c.n_plus == 1);
  CHECK(c.n_minus == 1);
  CHECK(c.s_plus == 0);
  CHECK(c.s_minus == 0);
  CHECK(c.m == 1);

  const auto i = multiplicity(PiecewiseSymbol::indicator(0.0, pi), 0.3, 0.7);
  CHECK(i.n_plus == 0);
  CHECK(i.s_plus == 1);
  CHECK(i.s_minus == 1);
  CHECK(i.m == 1);
  CHECK(i.jumps_plus.at(0) == doctest::Approx(pi));
  CHECK(i.jumps_minus.at(0) == doctest::Approx(0.0));

  const auto fig3 = PiecewiseSymbol::fig3();
  const auto mixed_lo = multiplicity(fig3, 0.2, 0.8);
  CHECK(mixed_lo.n_minus == 1);
  CHECK(mixed_lo.s_plus == 1);
  CHECK(mixed_lo.n_plus == 0);
  CHECK(mixed_lo.s_minus == 0);
  CHECK(mixed_lo.m == 1);

  const auto mixed_hi = multiplicity(fig3, 2.2, 2.8);
  CHECK(mixed_hi.n_plus == 1);
  CHECK(mixed_hi.s_minus == 1);
  CHECK(mixed_hi.jumps_minus.at(0) == doctest::Approx(2.0));
  CHECK(mixed_hi.m == 1);

  const auto thin = multiplicity(fig3, 1.4, 1.9);
  CHECK(thin.n_plus + thin.n_minus == 0);
  CHECK(thin.s_plus == 1);
  CHECK(thin.s_minus == 1);

  const auto thick = multiplicity(fig3, 3.2, 3.8);
  CHECK(thick.s_plus + thick.s_minus == 0);
  CHECK(thick.m == 1);
}

TEST_CASE("spectrum partition and point classes") {
  const auto fig3 = PiecewiseSymbol::fig3();
  const auto p = partition_spectrum(fig3);
  REQUIRE(p.thin.parts().size() == 1);
  CHECK(p.thin.parts()[0].lo == doctest::Approx(1.0));
  CHECK(p.thin.parts()[0].hi == doctest::Approx(2.0));
  REQUIRE(p.thick.parts().size() == 1);
  CHECK(p.thick.parts()[0].lo == doctest::Approx(3.0));
  CHECK(p.thick.parts()[0].hi == doctest::Approx(4.0));
  REQUIRE(p.mixed.parts().size() == 2);
  CHECK(p.mixed.measure() == doctest::Approx(2.0));
  CHECK(p.probes.size() == 4);
  for (const auto &pr : p.probes)
    CHECK(pr.report.m == 1);

  CHECK(classify_point(fig3, 1.5) == PointClass::Thin);
  CHECK(classify_point(fig3, 3.5) == PointClass::Thick);
  CHECK(classify_point(fig3, 0.5) == PointClass::Mixed);
  CHECK(classify_point(fig3, 2.5) == PointClass::Mixed);
  CHECK(classify_point(fig3, 2.0) == PointClass::Exceptional);
  CHECK(classify_point(fig3, 4.5) == PointClass::OutsideSpectrum);
  CHECK(to_string(PointClass::Mixed) == "Mixed");

  const auto ind = partition_spectrum(PiecewiseSymbol::indicator(0.0, pi));
  CHECK(ind.thin.measure() == doctest::Approx(1.0));
  CHECK(ind.thick.empty());
  CHECK(ind.mixed.empty());

  const auto cos = partition_spectrum(PiecewiseSymbol::cosine());
  CHECK(cos.thick.measure() == doctest::Approx(2.0));
  CHECK(cos.thin.empty());
}

TEST_CASE("multiplicity matches the grid scan on random symbols") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto s = random_symbol(rng);
    const auto samples = oracle::sample(s, 200000);
    for (int k = 0; k < 4; ++k) {
      double lo, hi;
      if (!oracle::random_band(s, rng, lo, hi))
        continue;
      const auto r = multiplicity(s, lo, hi);
      const auto scan = oracle::grid_scan(s, samples, lo, hi);
      CHECK(r.n_plus == scan.n_plus);
      CHECK(r.n_minus == scan.n_minus);
      CHECK(r.s_plus == scan.s_plus);
      CHECK(r.s_minus == scan.s_minus);
      CHECK(r.n_plus + r.s_plus == r.n_minus + r.s_minus);
      // the multiplicity is locally constant inside an admissible band
      const double q = 0.25 * (hi - lo);
      CHECK(multiplicity(s, lo + q, hi - q).m == r.m);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("probe intervals shrink until admissible") {
  const auto fig3 = PiecewiseSymbol::fig3();
  Interval probe;
  REQUIRE(probe_interval(fig3, {1.0, 2.0}, probe));
  CHECK(probe.lo == doctest::Approx(1.25));
  CHECK(probe.hi == doctest::Approx(1.75));
}

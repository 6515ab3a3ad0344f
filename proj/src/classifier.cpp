#include "toescat/classifier.hpp"
#include "toescat/errors.hpp"
#include <algorithm>
#include <cmath>

namespace toescat {

std::string to_string(PointClass c) {
  switch (c) {
  case PointClass::Thin:
    return "Thin";
  case PointClass::Thick:
    return "Thick";
  case PointClass::Mixed:
    return "Mixed";
  case PointClass::Exceptional:
    return "Exceptional";
  case PointClass::OutsideSpectrum:
    return "OutsideSpectrum";
  }
  return "?";
}

bool is_admissible(const PiecewiseSymbol &symbol, double lo, double hi,
                   double margin) {
  if (!(lo < hi))
    return false;
  const auto &sets = symbol.spectral_sets();
  if (!(lo > sets.gamma1 && hi < sets.gamma2))
    return false;
  for (double e : sets.exceptional)
    if (e >= lo - margin && e <= hi + margin)
      return false;
  return true;
}

PreimageArcs preimage_arcs(const PiecewiseSymbol &symbol, double lo,
                           double hi) {
  if (!is_admissible(symbol, lo, hi, 0.0))
    throw AdmissibilityViolated("band is not admissible");
  PreimageArcs out;
  for (const auto &seg : symbol.segments()) {
    if (seg.direction == 0)
      continue;
    const double vmin = std::min(seg.v_left, seg.v_right);
    const double vmax = std::max(seg.v_left, seg.v_right);
    if (!(lo < vmax && hi > vmin))
      continue;
    if (!(lo > vmin && hi < vmax))
      throw AdmissibilityViolated("band straddles a segment end value");
    const double xlo = symbol.solve_level(seg, lo);
    const double xhi = symbol.solve_level(seg, hi);
    for (double x : {xlo, xhi})
      if (std::abs(symbol.slope(wrap_angle(x))) < 1e-10)
        throw AdmissibilityViolated("tangency at a level-set solution");
    Arc arc;
    const double a = seg.direction > 0 ? xlo : xhi;
    const double b = seg.direction > 0 ? xhi : xlo;
    arc.alpha = wrap_angle(a);
    arc.beta = arc.alpha + (b - a);
    (seg.direction > 0 ? out.minus : out.plus).push_back(arc);
  }
  auto by_alpha = [](const Arc &u, const Arc &v) { return u.alpha < v.alpha; };
  std::sort(out.minus.begin(), out.minus.end(), by_alpha);
  std::sort(out.plus.begin(), out.plus.end(), by_alpha);
  return out;
}

MultiplicityReport multiplicity(const PiecewiseSymbol &symbol, double lo,
                                double hi) {
  const auto arcs = preimage_arcs(symbol, lo, hi);
  MultiplicityReport r;
  r.n_plus = int(arcs.plus.size());
  r.n_minus = int(arcs.minus.size());
  for (const auto &j : symbol.jumps()) {
    if (!j.is_jump())
      continue;
    if (!(lo >= j.jump_interval.lo && hi <= j.jump_interval.hi))
      continue;
    if (j.cls == BreakClass::SPlus) {
      ++r.s_plus;
      r.jumps_plus.push_back(j.eta);
    } else {
      ++r.s_minus;
      r.jumps_minus.push_back(j.eta);
    }
  }
  r.m = r.n_plus + r.s_plus;
  if (r.m != r.n_minus + r.s_minus)
    throw BalanceViolation("n+ + s+ != n- + s-");
  return r;
}

bool probe_interval(const PiecewiseSymbol &symbol, Interval component,
                    Interval &probe) {
  double half = 0.25 * component.length();
  const double mid = component.mid();
  for (int it = 0; it < 40; ++it, half *= 0.5) {
    if (is_admissible(symbol, mid - half, mid + half, 1e-3 * half)) {
      probe = {mid - half, mid + half};
      return true;
    }
  }
  return false;
}

SpectrumPartition partition_spectrum(const PiecewiseSymbol &symbol) {
  const auto &sets = symbol.spectral_sets();
  SpectrumPartition p;
  p.gamma = {sets.gamma1, sets.gamma2};
  p.sigma_omega = sets.sigma_omega;
  p.flat_values = sets.flat_values;
  p.upsilon = sets.upsilon;
  p.exceptional = sets.exceptional;
  const IntervalSet spectrum{p.gamma};
  const IntervalSet omega = sets.sigma_omega.without_points();
  p.thin = spectrum.subtract(omega);
  p.thick = omega.subtract(sets.upsilon);
  p.mixed = omega.intersect(sets.upsilon);

  for (const auto *set : {&p.thin, &p.thick, &p.mixed}) {
    for (const auto &comp : set->parts()) {
      // split the component at exceptional values lying inside it
      std::vector<double> edges{comp.lo};
      for (double e : sets.exceptional)
        if (e > comp.lo + 1e-9 && e < comp.hi - 1e-9)
          edges.push_back(e);
      edges.push_back(comp.hi);
      for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        Probe pr;
        if (!probe_interval(symbol, {edges[k], edges[k + 1]}, pr.interval))
          continue;
        pr.report = multiplicity(symbol, pr.interval.lo, pr.interval.hi);
        p.probes.push_back(pr);
      }
    }
  }
  std::sort(p.probes.begin(), p.probes.end(), [](const Probe &a, const Probe &b) {
    return a.interval.lo < b.interval.lo;
  });
  return p;
}

PointClass classify_point(const PiecewiseSymbol &symbol, double lambda) {
  const auto &sets = symbol.spectral_sets();
  constexpr double tol = 1e-9;
  if (lambda < sets.gamma1 - tol || lambda > sets.gamma2 + tol)
    return PointClass::OutsideSpectrum;
  for (double e : sets.exceptional)
    if (std::abs(lambda - e) <= tol)
      return PointClass::Exceptional;
  if (std::abs(lambda - sets.gamma1) <= tol ||
      std::abs(lambda - sets.gamma2) <= tol)
    return PointClass::Exceptional;
  const auto part = partition_spectrum(symbol);
  if (part.thin.contains_open(lambda))
    return PointClass::Thin;
  if (part.thick.contains_open(lambda))
    return PointClass::Thick;
  if (part.mixed.contains_open(lambda))
    return PointClass::Mixed;
  return PointClass::Exceptional;
}

} // namespace toescat

#pragma once
//! Independent reference computations shared by the unit and acceptance tests.
#include "toescat/classifier.hpp"
#include "toescat/symbol.hpp"
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using toescat::PiecewiseSymbol;
using toescat::Side;
using toescat::two_pi;

struct ScanArc {
  double start{0.0}; // unwrapped angle of the first in-band sample
  double end{0.0};
  int direction{0}; // +1 increasing, -1 decreasing
};

struct ScanResult {
  std::vector<ScanArc> arcs{};
  int n_plus{0};
  int n_minus{0};
  int s_plus{0};
  int s_minus{0};
};

//! Symbol values on a uniform midpoint grid plus the value discontinuities.
struct Samples {
  double h{0.0};
  std::vector<double> v{};
  std::vector<double> jumps{};
};

inline Samples sample(const PiecewiseSymbol &s, int n = 1000000) {
  Samples out;
  out.h = two_pi / n;
  out.v.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    out.v[std::size_t(k)] = s.eval((k + 0.5) * out.h);
  for (double b : s.breakpoints())
    if (std::abs(s.eval(b, Side::Left) - s.eval(b, Side::Right)) >= 1e-9)
      out.jumps.push_back(b);
  return out;
}

//! Runs of grid samples with lo < w < hi, broken at discontinuities, plus
//! jumps whose one-sided limits bracket the band.
inline ScanResult grid_scan(const PiecewiseSymbol &s, const Samples &smp,
                            double lo, double hi) {
  ScanResult out;
  for (double b : smp.jumps) {
    const double l = s.eval(b, Side::Left), r = s.eval(b, Side::Right);
    if (lo >= std::min(l, r) && hi <= std::max(l, r))
      (r < l ? out.s_plus : out.s_minus) += 1;
  }
  const int n = int(smp.v.size());
  const double h = smp.h;
  const auto &v = smp.v;
  auto in = [&](int k) {
    return v[std::size_t(k)] > lo && v[std::size_t(k)] < hi;
  };
  // the step from sample k to k+1 crosses a discontinuity
  auto broken = [&](int k) {
    const double a = (k + 0.5) * h, b = (k + 1.5) * h;
    for (double j : smp.jumps) {
      const double jj = j < a ? j + two_pi : j;
      if (jj > a && jj < b)
        return true;
    }
    return false;
  };
  // start the sweep at a sample outside the band, or just after a break
  int start = -1;
  for (int k = 0; k < n && start < 0; ++k)
    if (!in(k) || broken((k + n - 1) % n))
      start = k;
  if (start < 0)
    return out;
  bool open = false;
  ScanArc cur;
  double first_v = 0.0, last_v = 0.0;
  for (int step = 0; step <= n; ++step) {
    const int k = (start + step) % n;
    const bool brk = step > 0 && broken((start + step - 1) % n);
    if (open && (step == n || !in(k) || brk)) {
      cur.direction = last_v > first_v ? 1 : -1;
      out.arcs.push_back(cur);
      open = false;
    }
    if (step == n)
      break;
    if (in(k)) {
      const double x = (start + step + 0.5) * h;
      if (!open) {
        open = true;
        cur.start = x;
        first_v = v[std::size_t(k)];
      }
      cur.end = x;
      last_v = v[std::size_t(k)];
    }
  }
  for (const auto &a : out.arcs)
    (a.direction > 0 ? out.n_minus : out.n_plus) += 1;
  return out;
}

//! Random admissible band of width up to 5% of the range, or false.
inline bool random_band(const PiecewiseSymbol &s, std::mt19937_64 &rng,
                        double &lo, double &hi) {
  const auto &sets = s.spectral_sets();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double span = sets.gamma2 - sets.gamma1;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double c = sets.gamma1 + span * u(rng);
    const double w = span * (0.002 + 0.05 * u(rng));
    lo = c - 0.5 * w;
    hi = c + 0.5 * w;
    if (toescat::is_admissible(s, lo, hi, 1e-3 * span))
      return true;
  }
  return false;
}

} // namespace oracle

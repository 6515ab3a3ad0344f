#pragma once
#include <string>
#include <vector>

namespace toescat {

struct Interval {
  double lo{0.0};
  double hi{0.0};
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains_open(double x) const { return x > lo && x < hi; }
};

//! Finite union of closed real intervals, kept sorted and merged.
//! Set differences return closures; components of zero length are dropped
//! by `subtract` and `intersect`, kept by `add` (isolated points).
class IntervalSet {
public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts);

  void add(Interval iv);
  IntervalSet unite(const IntervalSet &other) const;
  IntervalSet intersect(const IntervalSet &other) const;
  IntervalSet subtract(const IntervalSet &other) const;
  IntervalSet without_points() const;

  bool contains(double x) const;
  bool contains_open(double x) const;
  double measure() const;
  bool empty() const { return m_parts.empty(); }
  const std::vector<Interval> &parts() const { return m_parts; }

  std::string str() const;

  static constexpr double merge_tol = 1e-12;

private:
  std::vector<Interval> m_parts;
};

} // namespace toescat

#include "toescat/intervals.hpp"
#include <algorithm>
#include <sstream>

namespace toescat {

IntervalSet::IntervalSet(std::initializer_list<Interval> parts) {
  for (const auto &p : parts)
    add(p);
}

void IntervalSet::add(Interval iv) {
  if (iv.hi < iv.lo)
    std::swap(iv.lo, iv.hi);
  m_parts.push_back(iv);
  std::sort(m_parts.begin(), m_parts.end(),
            [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto &p : m_parts) {
    if (!merged.empty() && p.lo <= merged.back().hi + merge_tol)
      merged.back().hi = std::max(merged.back().hi, p.hi);
    else
      merged.push_back(p);
  }
  m_parts = std::move(merged);
}

IntervalSet IntervalSet::unite(const IntervalSet &other) const {
  IntervalSet out = *this;
  for (const auto &p : other.m_parts)
    out.add(p);
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet &other) const {
  IntervalSet out;
  for (const auto &a : m_parts)
    for (const auto &b : other.m_parts) {
      const double lo = std::max(a.lo, b.lo);
      const double hi = std::min(a.hi, b.hi);
      if (hi - lo > merge_tol)
        out.add({lo, hi});
    }
  return out;
}

IntervalSet IntervalSet::subtract(const IntervalSet &other) const {
  std::vector<Interval> cur(m_parts.begin(), m_parts.end());
  for (const auto &b : other.m_parts) {
    std::vector<Interval> next;
    for (const auto &a : cur) {
      if (b.hi <= a.lo || b.lo >= a.hi) {
        next.push_back(a);
        continue;
      }
      if (b.lo > a.lo)
        next.push_back({a.lo, b.lo});
      if (b.hi < a.hi)
        next.push_back({b.hi, a.hi});
    }
    cur = std::move(next);
  }
  IntervalSet out;
  for (const auto &a : cur)
    if (a.length() > merge_tol)
      out.add(a);
  return out;
}

IntervalSet IntervalSet::without_points() const {
  IntervalSet out;
  for (const auto &a : m_parts)
    if (a.length() > merge_tol)
      out.add(a);
  return out;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(m_parts.begin(), m_parts.end(),
                     [x](const Interval &p) { return p.contains(x); });
}

bool IntervalSet::contains_open(double x) const {
  return std::any_of(m_parts.begin(), m_parts.end(),
                     [x](const Interval &p) { return p.contains_open(x); });
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto &p : m_parts)
    m += p.length();
  return m;
}

std::string IntervalSet::str() const {
  if (m_parts.empty())
    return "{}";
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < m_parts.size(); ++i) {
    if (i)
      os << " U ";
    os << "[" << m_parts[i].lo << ", " << m_parts[i].hi << "]";
  }
  return os.str();
}

} // namespace toescat

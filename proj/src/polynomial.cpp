#include "toescat/polynomial.hpp"
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace toescat::poly {

double eval(const Coeffs &c, double s) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    v = v * s + *it;
  return v;
}

static std::complex<double> ceval(const Coeffs &c, std::complex<double> s) {
  std::complex<double> v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    v = v * s + *it;
  return v;
}

Coeffs derivative(const Coeffs &c) {
  if (c.size() <= 1)
    return {0.0};
  Coeffs d(c.size() - 1);
  for (std::size_t m = 1; m < c.size(); ++m)
    d[m - 1] = double(m) * c[m];
  return d;
}

int degree(const Coeffs &c) {
  for (int m = int(c.size()) - 1; m >= 0; --m)
    if (c[std::size_t(m)] != 0.0)
      return m;
  return -1;
}

std::vector<double> real_roots(const Coeffs &c, double a, double b) {
  const int d = degree(c);
  std::vector<double> out;
  if (d <= 0)
    return out;
  std::vector<std::complex<double>> z;
  if (d == 1) {
    z.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i)
      comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
      comp(i, d - 1) = -c[std::size_t(i)] / c[std::size_t(d)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < d; ++i)
      z.push_back(es.eigenvalues()(i));
  }
  const auto dc = derivative(c);
  for (auto r : z) {
    for (int it = 0; it < 3; ++it) {
      const auto dp = ceval(dc, r);
      if (std::abs(dp) == 0.0)
        break;
      r -= ceval(c, r) / dp;
    }
    if (std::abs(r.imag()) >= 1e-10)
      continue;
    const double x = r.real();
    const double slack = 1e-12 * std::max(1.0, std::abs(b - a));
    if (x >= a - slack && x <= b + slack)
      out.push_back(std::clamp(x, a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double u, double v) { return std::abs(u - v) < 1e-12; }),
            out.end());
  return out;
}

Coeffs recenter(const Coeffs &c, double shift, double scale) {
  // Horner on polynomials: q(s) = ((c_d (shift + scale s) + c_{d-1}) ...)
  Coeffs q{0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    Coeffs next(q.size() + 1, 0.0);
    for (std::size_t m = 0; m < q.size(); ++m) {
      next[m] += q[m] * shift;
      next[m + 1] += q[m] * scale;
    }
    next[0] += *it;
    q = std::move(next);
  }
  q.resize(std::max<std::size_t>(c.size(), 1));
  return q;
}

} // namespace toescat::poly

#include "toescat/toeplitz.hpp"
#include "toescat/errors.hpp"
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace toescat {

using cd = std::complex<double>;

TruncatedToeplitz::TruncatedToeplitz(const std::vector<cd> &coeffs, int n)
    : m_n(n), m_T(n, n), m_cache(std::make_shared<Cache>()) {
  if (n < 1)
    throw InvalidConfig("Toeplitz size must be >= 1");
  if (int(coeffs.size()) < 2 * n - 1)
    throw InvalidConfig("not enough Fourier coefficients");
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      m_T(j, k) = coeffs[std::size_t(j - k + n - 1)];
}

TruncatedToeplitz TruncatedToeplitz::build(const PiecewiseSymbol &symbol,
                                           int n) {
  return TruncatedToeplitz(symbol.coefficient_range(n - 1), n);
}

TruncatedToeplitz TruncatedToeplitz::build(const FourierCoeffs &coeffs, int n) {
  if (n - 1 > 2 * coeffs.M)
    throw InvalidConfig("mode cutoff too small for this size");
  std::vector<cd> c(std::size_t(2 * n - 1));
  for (int k = -(n - 1); k <= n - 1; ++k)
    c[std::size_t(k + n - 1)] = coeffs(k);
  return TruncatedToeplitz(c, n);
}

const Eigen::VectorXd &TruncatedToeplitz::eigenvalues() const {
  std::lock_guard<std::mutex> lock(m_cache->mutex);
  if (m_cache->have_vectors)
    return m_cache->system.values;
  if (!m_cache->have_values) {
    m_cache->values = hermitian_eigen(m_T, false).values;
    m_cache->have_values = true;
  }
  return m_cache->values;
}

const HermitianEigen &TruncatedToeplitz::eigensystem() const {
  std::lock_guard<std::mutex> lock(m_cache->mutex);
  if (!m_cache->have_vectors) {
    m_cache->system = hermitian_eigen(m_T, true);
    m_cache->have_vectors = true;
  }
  return m_cache->system;
}

int TruncatedToeplitz::count(double a, double b) const {
  const auto &ev = eigenvalues();
  int c = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > a + 1e-12 && ev(i) < b - 1e-12)
      ++c;
  return c;
}

Eigen::VectorXcd TruncatedToeplitz::evolve(const Eigen::VectorXcd &f,
                                           double t) const {
  const auto &es = eigensystem();
  Eigen::VectorXcd c = es.vectors.adjoint() * f;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) *= std::exp(cd(0.0, -es.values(i) * t));
  return es.vectors * c;
}

//==============================================================================
double szego_limit(const PiecewiseSymbol &symbol, double a, double b) {
  for (double v : symbol.spectral_sets().flat_values)
    if (std::abs(v - a) <= 1e-12 || std::abs(v - b) <= 1e-12)
      throw BoundaryMassNonzero("band end equals the value of a flat piece");
  double measure = 0.0;
  for (const auto &seg : symbol.segments()) {
    if (seg.direction == 0) {
      if (seg.v_left > a && seg.v_left < b)
        measure += seg.right - seg.left;
      continue;
    }
    const double vmin = std::min(seg.v_left, seg.v_right);
    const double vmax = std::max(seg.v_left, seg.v_right);
    const double lo = std::max(a, vmin), hi = std::min(b, vmax);
    if (!(lo < hi))
      continue;
    measure += std::abs(symbol.solve_level(seg, hi) - symbol.solve_level(seg, lo));
  }
  return measure / two_pi;
}

CountingReport counting_report(const PiecewiseSymbol &symbol,
                               const TruncatedToeplitz &T, double a, double b) {
  CountingReport r;
  r.n = T.size();
  r.a = a;
  r.b = b;
  r.limit = szego_limit(symbol, a, b);
  r.count = T.count(a, b);
  r.ratio = double(r.count) / double(r.n);
  r.deviation = std::abs(r.ratio - r.limit);
  return r;
}

CountingReport counting_report(const PiecewiseSymbol &symbol, int n, double a,
                               double b) {
  return counting_report(symbol, TruncatedToeplitz::build(symbol, n), a, b);
}

//==============================================================================
HankelBlock hankel_block(const std::vector<cd> &positive, int n) {
  if (int(positive.size()) < 2 * n)
    throw InvalidConfig("not enough Fourier coefficients for the Hankel block");
  HankelBlock h;
  h.n = n;
  h.H.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      h.H(j, k) = positive[std::size_t(j + k + 1)];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(h.H);
  h.singular_values = svd.singularValues();
  return h;
}

HankelBlock hankel_block(const PiecewiseSymbol &symbol, int n) {
  if (n < 8)
    throw InvalidConfig("Hankel block size must be >= 8");
  std::vector<cd> pos(std::size_t(2 * n));
  for (int k = 0; k < 2 * n; ++k)
    pos[std::size_t(k)] = symbol.coefficient(k);
  return hankel_block(pos, n);
}

double decay_exponent(const HankelBlock &H) {
  const int k0 = std::max(1, H.n / 8), k1 = std::max(k0 + 1, H.n / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  const double floor =
      H.singular_values.size() ? 1e-13 * H.singular_values(0) : 0.0;
  for (int k = k0; k <= k1 && k <= H.singular_values.size(); ++k) {
    const double s = H.singular_values(k - 1);
    if (!(s > floor))
      continue;
    const double x = std::log(double(k)), y = std::log(s);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2)
    return INFINITY;
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return -slope;
}

int numerical_rank(const HankelBlock &H, double rel_tol) {
  if (H.singular_values.size() == 0 || H.singular_values(0) == 0.0)
    return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < H.singular_values.size(); ++i)
    if (H.singular_values(i) > rel_tol * H.singular_values(0))
      ++r;
  return r;
}

//==============================================================================
double flip_equivalence_check(const PiecewiseSymbol &symbol, int n) {
  if (n < 2)
    throw InvalidConfig("flip check needs n >= 2");
  const auto c = symbol.coefficient_range(n);
  const auto reflected = symbol.reflect().coefficient_range(n);
  auto coef = [&](const std::vector<cd> &v, int k) {
    return v[std::size_t(k + n)];
  };
  // negative-mode block on e_{-1}..e_{-n}: <e_{-j}, w e_{-k}> = c_{k-j}
  Eigen::MatrixXcd A(n, n), B(n, n);
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      A(j - 1, k - 1) = coef(c, k - j);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      B(j, k) = coef(reflected, j - k);
  // flip e_{-j} -> e_{j-1}: (V A V*)_{j-1,k-1} = A_{jk}
  return (A - B).cwiseAbs().maxCoeff();
}

double commutator_trace_norm(const std::vector<cd> &coeffs, int n) {
  const int h = n / 2;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int j = a - h, k = b - h;
      const int chi = (j >= 0 ? 1 : 0) - (k >= 0 ? 1 : 0);
      if (chi != 0)
        C(a, b) = double(chi) * coeffs[std::size_t(j - k + n)];
    }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(C);
  return svd.singularValues().sum();
}

double commutator_trace_norm(const PiecewiseSymbol &phi, int n,
                             bool diagnostic) {
  bool jumps = false;
  for (const auto &j : phi.jumps())
    jumps = jumps || j.is_jump();
  if (jumps && !diagnostic)
    throw DomainError("commutator norm requires a symbol without jumps");
  return commutator_trace_norm(phi.coefficient_range(n), n);
}

} // namespace toescat

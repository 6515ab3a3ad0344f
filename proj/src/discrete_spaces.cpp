#include "toescat/discrete_spaces.hpp"
#include "toescat/errors.hpp"
#include <cstring>
#include <fftw3.h>
#include <mutex>

namespace toescat {

using cd = std::complex<double>;

struct DiscreteSpaces::Fft {
  int n;
  fftw_complex *buf;
  fftw_plan fwd, bwd;
  std::mutex mutex;
  explicit Fft(int size) : n(size) {
    buf = fftw_alloc_complex(std::size_t(n));
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  Eigen::VectorXcd run(const Eigen::VectorXcd &in, bool forward) {
    std::lock_guard<std::mutex> lock(mutex);
    std::memcpy(buf, in.data(), sizeof(fftw_complex) * std::size_t(n));
    fftw_execute(forward ? fwd : bwd);
    Eigen::VectorXcd out(n);
    std::memcpy(static_cast<void *>(out.data()), buf, sizeof(fftw_complex) * std::size_t(n));
    return out;
  }
};

DiscreteSpaces::DiscreteSpaces(int M, int N) : m_M(M), m_N(N) {
  if (M < 1)
    throw InvalidConfig("mode cutoff must be >= 1");
  if (m_N == 0) {
    m_N = 8;
    while (m_N < 8 * (M + 1))
      m_N *= 2;
  }
  if ((m_N & (m_N - 1)) != 0 || m_N < 2 * (M + 1))
    throw InvalidConfig("grid size must be a power of two above 2(M+1)");
  m_fft = std::make_unique<Fft>(m_N);
}

DiscreteSpaces::~DiscreteSpaces() = default;

DiscreteSpaces make_spaces(int M, int N) { return DiscreteSpaces(M, N); }

Eigen::VectorXcd DiscreteSpaces::to_modes(const Eigen::VectorXcd &grid) const {
  return m_fft->run(grid, true) / double(m_N);
}

Eigen::VectorXcd DiscreteSpaces::to_grid(const Eigen::VectorXcd &modes) const {
  return m_fft->run(modes, false);
}

Eigen::VectorXcd DiscreteSpaces::hardy_coeffs(const Eigen::VectorXcd &grid) const {
  return to_modes(grid).head(m_M + 1);
}

Eigen::VectorXcd DiscreteSpaces::from_hardy(const Eigen::VectorXcd &a) const {
  Eigen::VectorXcd modes = Eigen::VectorXcd::Zero(m_N);
  modes.head(a.size()) = a;
  return to_grid(modes);
}

Eigen::VectorXcd DiscreteSpaces::project(const Eigen::VectorXcd &grid) const {
  return from_hardy(hardy_coeffs(grid));
}

double DiscreteSpaces::hardy_norm2_full(const Eigen::VectorXcd &grid) const {
  return to_modes(grid).head(m_N / 2).squaredNorm();
}

double DiscreteSpaces::norm(const Eigen::VectorXcd &grid) const {
  return std::sqrt(grid.squaredNorm() / m_N);
}

Eigen::VectorXd DiscreteSpaces::symbol_values(const PiecewiseSymbol &symbol) const {
  Eigen::VectorXd v(m_N);
  for (int j = 0; j < m_N; ++j)
    v(j) = symbol.eval(angle(j), Side::Right);
  return v;
}

Eigen::VectorXd DiscreteSpaces::mask(const PiecewiseSymbol &symbol,
                                     int sign) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m_N);
  for (int j = 0; j < m_N; ++j) {
    if (symbol.breakpoint_index(angle(j)) >= 0)
      continue;
    v(j) = sign * symbol.slope(angle(j)) < 0.0 ? 1.0 : 0.0;
  }
  return v;
}

Eigen::VectorXcd evolve_mult(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const Eigen::VectorXcd &grid, double t) {
  const auto w = spaces.symbol_values(symbol);
  Eigen::VectorXcd out(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    out(j) = grid(j) * std::exp(cd(0.0, -w(j) * t));
  return out;
}

Eigen::VectorXcd evolve_toeplitz(const TruncatedToeplitz &T,
                                 const Eigen::VectorXcd &f, double t) {
  return T.evolve(f, t);
}

} // namespace toescat

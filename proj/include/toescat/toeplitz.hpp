#pragma once
#include "toescat/linalg.hpp"
#include "toescat/symbol.hpp"
#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <mutex>
#include <vector>

namespace toescat {

//! Hermitian n x n matrix T_jk = c_{j-k} with a lazily computed eigensystem.
//! Copies share the cached eigensystem.
class TruncatedToeplitz {
public:
  //! coeffs[k + n - 1] = c_k for |k| <= n - 1.
  TruncatedToeplitz(const std::vector<std::complex<double>> &coeffs, int n);
  static TruncatedToeplitz build(const PiecewiseSymbol &symbol, int n);
  static TruncatedToeplitz build(const FourierCoeffs &coeffs, int n);

  int size() const { return m_n; }
  const Eigen::MatrixXcd &matrix() const { return m_T; }
  //! Ascending eigenvalues (computed without vectors if none were requested).
  const Eigen::VectorXd &eigenvalues() const;
  const HermitianEigen &eigensystem() const;
  //! Number of eigenvalues in (a, b), strict with tolerance 1e-12.
  int count(double a, double b) const;
  //! exp(-i T t) f.
  Eigen::VectorXcd evolve(const Eigen::VectorXcd &f, double t) const;

private:
  struct Cache {
    std::mutex mutex;
    bool have_values{false};
    bool have_vectors{false};
    Eigen::VectorXd values;
    HermitianEigen system;
  };
  int m_n;
  Eigen::MatrixXcd m_T;
  std::shared_ptr<Cache> m_cache;
};

struct CountingReport {
  int n{0};
  double a{0.0};
  double b{0.0};
  int count{0};
  double ratio{0.0};
  double limit{0.0};
  double deviation{0.0};
};

//! Normalized angular measure of {a < w < b}.
double szego_limit(const PiecewiseSymbol &symbol, double a, double b);
CountingReport counting_report(const PiecewiseSymbol &symbol, int n, double a,
                               double b);
CountingReport counting_report(const PiecewiseSymbol &symbol,
                               const TruncatedToeplitz &T, double a, double b);

struct HankelBlock {
  int n{0};
  Eigen::MatrixXcd H{};
  Eigen::VectorXd singular_values{}; // descending
};

//! H_jk = c_{j+k+1}, 0 <= j,k < n.
HankelBlock hankel_block(const PiecewiseSymbol &symbol, int n);
HankelBlock hankel_block(const std::vector<std::complex<double>> &positive,
                         int n);
//! Heuristic trace-class proxy: minus the least-squares slope of
//! log sigma_k against log k over k in [n/8, n/2]. Values below 1e-13 sigma_1
//! are rounding noise and skipped; infinite when fewer than two remain.
double decay_exponent(const HankelBlock &H);
//! Numerical rank with relative threshold.
int numerical_rank(const HankelBlock &H, double rel_tol = 1e-12);

//! Max entrywise deviation between the flipped truncation of the
//! negative-mode compression and the Hardy-space compression of the
//! reflected symbol, whose coefficients are computed independently.
double flip_equivalence_check(const PiecewiseSymbol &symbol, int n);

//! Nuclear norm of the n x n truncation (modes -n/2..n/2-1) of the
//! commutator of the Hardy projection with multiplication by phi.
//! Symbols with jumps raise DomainError unless `diagnostic` is set.
double commutator_trace_norm(const PiecewiseSymbol &phi, int n,
                             bool diagnostic = false);
//! Coefficient-level entry, coeffs[k + n] = c_k for |k| <= n.
double commutator_trace_norm(const std::vector<std::complex<double>> &coeffs,
                             int n);

} // namespace toescat

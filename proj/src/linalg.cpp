#include "toescat/linalg.hpp"
#include "toescat/errors.hpp"
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace toescat {

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd &A, bool with_vectors) {
  const lapack_int n = lapack_int(A.rows());
  HermitianEigen out;
  out.values.resize(n);
  if (n == 0)
    return out;
  Eigen::MatrixXcd work = A;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'U', n,
                     work.data(), n, out.values.data());
  if (info != 0)
    throw QuadratureNonConvergence("zheevd failed with info " +
                                   std::to_string(info));
  if (with_vectors)
    out.vectors = std::move(work);
  return out;
}

PivotedCholesky pivoted_cholesky(const Eigen::MatrixXcd &G, double rel_tol,
                                 int forced) {
  const Eigen::Index n = G.rows();
  Eigen::VectorXd d = G.diagonal().real();
  const double threshold = rel_tol * (n > 0 ? d.maxCoeff() : 0.0);
  std::vector<char> used(std::size_t(n), 0);
  std::vector<int> piv;
  Eigen::MatrixXcd L(n, std::min<Eigen::Index>(n, 64));
  Eigen::Index k = 0;
  int next_forced = 0;
  for (;;) {
    Eigen::Index j = -1;
    while (next_forced < forced) {
      const int cand = next_forced++;
      if (d(cand) > threshold) {
        j = cand;
        break;
      }
    }
    if (j < 0) {
      double best = threshold;
      for (Eigen::Index i = 0; i < n; ++i)
        if (!used[std::size_t(i)] && d(i) > best) {
          best = d(i);
          j = i;
        }
      if (j < 0)
        break;
    }
    if (k == L.cols())
      L.conservativeResize(n, std::min<Eigen::Index>(n, 2 * L.cols()));
    const double piv_val = std::sqrt(d(j));
    Eigen::VectorXcd col = G.col(j);
    if (k > 0)
      col.noalias() -= L.leftCols(k) * L.row(j).leftCols(k).adjoint();
    col /= piv_val;
    L.col(k) = col;
    d -= col.cwiseAbs2();
    used[std::size_t(j)] = 1;
    d(j) = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (used[std::size_t(i)])
        d(i) = 0.0;
    piv.push_back(int(j));
    ++k;
    if (k == n)
      break;
  }
  PivotedCholesky out;
  out.pivots = piv;
  out.R.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    out.R.col(a) = L.row(piv[std::size_t(a)]).leftCols(k).adjoint();
  // rows of L at pivots form a lower-triangular factor; R is its adjoint
  out.R.triangularView<Eigen::StrictlyLower>().setZero();
  return out;
}

int extend_orthonormal(Eigen::MatrixXcd &Q, const Eigen::MatrixXcd &V,
                       double tol, const std::vector<double> &ref_norm) {
  int added = 0;
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::VectorXcd v = V.col(j);
    for (int pass = 0; pass < 2 && Q.cols() > 0; ++pass)
      v.noalias() -= Q * (Q.adjoint() * v);
    const double r = v.norm();
    if (!(r > tol * ref_norm[std::size_t(j)]))
      continue;
    Q.conservativeResize(V.rows(), Q.cols() + 1);
    Q.col(Q.cols() - 1) = v / r;
    ++added;
  }
  return added;
}

} // namespace toescat

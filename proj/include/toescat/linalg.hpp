#pragma once
#include <Eigen/Dense>
#include <vector>

namespace toescat {

struct HermitianEigen {
  Eigen::VectorXd values{};   // ascending
  Eigen::MatrixXcd vectors{}; // orthonormal columns, empty if not requested
};

//! Divide-and-conquer eigensolver (LAPACK zheevd) on the upper triangle.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd &A,
                               bool with_vectors = true);

//! G[P,P] = R^H R for the selected index set P (in pivot order).
struct PivotedCholesky {
  std::vector<int> pivots{};
  Eigen::MatrixXcd R{};
};

//! Greedy diagonal pivoting on a Hermitian positive semidefinite matrix.
//! The first `forced` indices are taken in order (skipped if their residual
//! falls below the threshold); stops when every residual diagonal entry is
//! below rel_tol * max(diag(G)).
PivotedCholesky pivoted_cholesky(const Eigen::MatrixXcd &G, double rel_tol,
                                 int forced = 0);

//! Append to Q the parts of V's columns orthogonal to span(Q), two passes of
//! classical Gram-Schmidt. Column j is dropped when its residual norm is
//! below tol * ref_norm[j]. Returns the number of columns appended.
int extend_orthonormal(Eigen::MatrixXcd &Q, const Eigen::MatrixXcd &V,
                       double tol, const std::vector<double> &ref_norm);

} // namespace toescat

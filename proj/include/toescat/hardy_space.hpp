#pragma once
#include "toescat/linalg.hpp"
#include "toescat/quadrature.hpp"
#include "toescat/symbol.hpp"
#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace toescat {

//! Value of the symbol at a quadrature node, using the exact anchor offset.
double symbol_at(const PiecewiseSymbol &symbol, const CircleQuadrature &q,
                 const CircleNode &node);

struct AugmentedSpaceConfig {
  int M{128};
  //! Atom centres run from 0 down to -depth in ln|1 - z/p|.
  std::vector<AnchorSpec> anchors{};
  double width{3.0};
  double spacing{3.0};
  std::vector<double> freqs{-0.9, -0.45, 0.0, 0.45, 0.9};
  double rel_tol{1e-10};
  //! Breakpoints of the symbols that will be compressed.
  std::vector<double> cuts{};
  int far_panels{0}; // 0: 4(M+1)
};

//! Finite subspace of the Hardy space spanned by the modes z^0..z^M and, at
//! each anchor p, dilation atoms
//!   exp(-L/2 - i s L - (L - c)^2 / (2 w^2)),  L = ln(1 - z/p),
//! which resolve functions concentrating at p on logarithmic scales.
//! Coordinates refer to an orthonormal basis obtained by pivoted Cholesky
//! of the Gram matrix with the modes taken first, so the first M+1
//! coordinates of a mode combination are its mode coefficients.
class AugmentedHardySpace {
public:
  explicit AugmentedHardySpace(const AugmentedSpaceConfig &cfg);

  int dim() const { return int(m_chol.pivots.size()); }
  int modes() const { return m_cfg.M + 1; }
  int basis_size() const { return int(m_funcs.size()); }
  const CircleQuadrature &quadrature() const { return m_quad; }
  const AugmentedSpaceConfig &config() const { return m_cfg; }

  //! Compressions of multiplication operators, Hermitian dim x dim.
  std::vector<Eigen::MatrixXcd>
  compress(const std::vector<const PiecewiseSymbol *> &symbols) const;
  Eigen::MatrixXcd compress(const PiecewiseSymbol &symbol) const;

  Eigen::VectorXcd from_modes(const Eigen::VectorXcd &a) const;
  //! Coordinates of the orthogonal projection of a boundary function
  //! given by its values at the quadrature nodes.
  Eigen::VectorXcd project_nodes(const Eigen::VectorXcd &values) const;
  Eigen::VectorXcd
  project(const std::function<std::complex<double>(const CircleNode &)> &f) const;
  //! Boundary values at the quadrature nodes.
  Eigen::VectorXcd to_nodes(const Eigen::VectorXcd &coords) const;
  double node_norm2(const Eigen::VectorXcd &values) const;

private:
  struct Func {
    int anchor{-1}; // -1 for modes
    int n{0};
    double center{0.0};
    double freq{0.0};
    double scale{1.0};
  };
  struct Block {
    std::vector<int> nodes;
    std::vector<int> funcs;
  };
  Eigen::MatrixXcd evaluate(const Block &b, const std::vector<int> &funcs) const;
  std::vector<int> kept(const Block &b) const;

  AugmentedSpaceConfig m_cfg;
  CircleQuadrature m_quad;
  std::vector<Func> m_funcs;
  std::vector<Block> m_blocks;
  PivotedCholesky m_chol;
  std::vector<int> m_pos; // basis function -> pivot position, -1 if dropped
};

} // namespace toescat

#pragma once
#include "toescat/errors.hpp"
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace toescat {

struct GaussRule {
  std::vector<double> x; // nodes on [-1, 1]
  std::vector<double> w;
};

//! Gauss-Legendre rule of the given order (cached).
const GaussRule &gauss_legendre(int order);

//! Adaptive Gauss-Legendre integration of a complex function on [a, b]:
//! 16-point panels bisected until the two halves agree with the parent to
//! rtol (relative to the running total) or abs_floor.
std::complex<double>
adaptive_integrate(const std::function<std::complex<double>(double)> &f,
                   double a, double b, double rtol = 1e-8,
                   int max_depth = 20, double abs_floor = 1e-300);

//! ln(1 - e^{i delta}) on the principal branch, for delta != 0 mod 2pi.
std::complex<double> log_one_minus(double delta);

//==============================================================================
//! Node of a circle quadrature; `weight` integrates against dx / 2pi.
//! Graded nodes keep their exact offset from the anchor angle, so that
//! angle = anchor + offset holds even when the offset is below the ulp.
struct CircleNode {
  double angle{0.0};
  int anchor{-1};
  double offset{0.0};
  double weight{0.0};
  double log_radius{0.0}; // ln|1 - e^{i offset}|, graded nodes only
};

struct AnchorSpec {
  double angle{0.0};
  //! Graded nodes reach down to ln|1 - z/p| = -depth - tail.
  double depth{0.0};
};

struct CircleQuadratureConfig {
  double window{0.02}; // graded zone: |1 - z/p| < window
  double panel{1.0};   // panel width in ln|1 - z/p|
  int order{8};
  double tail{24.0};
  int far_panels{256}; // per full turn
  std::vector<double> cuts{};
};

class CircleQuadrature {
public:
  CircleQuadrature(std::vector<AnchorSpec> anchors,
                   const CircleQuadratureConfig &cfg);

  const std::vector<CircleNode> &nodes() const { return m_nodes; }
  const std::vector<AnchorSpec> &anchors() const { return m_anchors; }
  std::size_t size() const { return m_nodes.size(); }

  //! Signed angular offset of node q from angle c, exact when c is the
  //! node's anchor.
  double offset_from(const CircleNode &q, double c) const;
  //! ln(1 - e^{i(x_q - c)}).
  std::complex<double> log_factor(const CircleNode &q, double c) const;

private:
  std::vector<AnchorSpec> m_anchors;
  std::vector<CircleNode> m_nodes;
};

} // namespace toescat

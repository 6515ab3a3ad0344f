#pragma once
#include "toescat/quadrature.hpp"
#include "toescat/symbol.hpp"
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace toescat {

double sigma_of_lambda(double lambda);

//! Arc (zeta1, zeta2), counterclockwise. The model symbol equals alpha_hi on
//! the arc and alpha_lo elsewhere; its spectral parameter lambda in (0, 1)
//! maps to energy alpha_lo + (alpha_hi - alpha_lo) lambda.
struct IndicatorChannel {
  double zeta1{0.0};
  double zeta2{pi};
  double alpha_lo{0.0};
  double alpha_hi{1.0};

  IndicatorChannel() = default;
  IndicatorChannel(double z1, double z2, double lo = 0.0, double hi = 1.0);
  double arc_measure() const;
  double chord() const;
  double energy(double lambda) const {
    return alpha_lo + (alpha_hi - alpha_lo) * lambda;
  }
  double rate() const { return alpha_hi - alpha_lo; }
};

double kappa_of_lambda(double lambda, const IndicatorChannel &channel);
std::complex<double> eigenfunction_s(std::complex<double> z, double lambda,
                                     const IndicatorChannel &channel);
std::complex<double> eigenfunction_r(std::complex<double> z, double lambda);

//! Smooth bump exp(-1/(1-u^2)) on (lo, hi), unit norm in L2(0, 1).
class BumpProfile {
public:
  BumpProfile(double lo = 0.3, double hi = 0.7);
  double operator()(double lambda) const;
  double lo() const { return m_lo; }
  double hi() const { return m_hi; }

private:
  double m_lo, m_hi, m_scale{1.0};
};

//! Real spectral density supported in [lo, hi].
struct SpectralDensity {
  std::function<double(double)> g;
  double lo{0.0};
  double hi{1.0};
  static SpectralDensity of(const BumpProfile &b) {
    return {[b](double x) { return b(x); }, b.lo(), b.hi()};
  }
};

//! Integral of eigenfunction_s(z; lambda) g(lambda) d lambda, adaptive.
std::complex<double> synthesize(const IndicatorChannel &channel,
                                const SpectralDensity &g,
                                std::complex<double> z, double rtol = 1e-8);

//==============================================================================
//! Model-propagated state exp(-i T t) applied to the synthesis of g,
//! evaluated through the two log factors ln(1 - z/zeta_j).
class ModelPropagator {
public:
  //! `max_log` bounds |Re ln(1 - z/zeta1) - Re ln(1 - z/zeta2)| over the
  //! points that will be evaluated; it sets the lambda resolution.
  ModelPropagator(const IndicatorChannel &channel, const SpectralDensity &g,
                  double t, double max_log = 60.0);

  std::complex<double> operator()(std::complex<double> L1,
                                  std::complex<double> L2) const;
  //! Interior point |z| < 1.
  std::complex<double> at(std::complex<double> z) const;
  //! Boundary values on quadrature nodes.
  Eigen::VectorXcd on_nodes(const CircleQuadrature &q) const;

  const IndicatorChannel &channel() const { return m_channel; }
  double time() const { return m_t; }
  std::size_t lambda_nodes() const { return m_lambda.size(); }

private:
  IndicatorChannel m_channel;
  double m_t;
  std::vector<double> m_lambda, m_sigma;
  std::vector<std::complex<double>> m_amp;
};

//! Depth (in ln|1 - z/zeta|) reached by model states at time t.
double model_depth(const IndicatorChannel &channel, double t);

//! Graded boundary quadrature resolving a model state near both endpoints.
CircleQuadrature model_quadrature(const IndicatorChannel &channel, double t,
                                  int far_panels = 256);

struct ConcentrationProfile {
  double t{0.0};
  double near1{0.0};
  double near2{0.0};
  double elsewhere{0.0};
  double total{0.0}; // unnormalized boundary mass
};

ConcentrationProfile concentration_profile(const IndicatorChannel &channel,
                                           const BumpProfile &bump, double t,
                                           double eps = 0.1);

struct PropagatorSample {
  double t{0.0};
  std::vector<std::complex<double>> z_grid{};
  std::vector<std::complex<double>> values{};
  ConcentrationProfile masses{};
};

PropagatorSample propagate(const IndicatorChannel &channel,
                           const BumpProfile &bump, double t,
                           const std::vector<std::complex<double>> &z_grid,
                           double eps = 0.1);

//==============================================================================
struct JumpModelSymbol {
  double eta{0.0};
  double eps{pi / 2};
  double alpha_minus{0.0}; // limit from the left
  double alpha_plus{0.0};  // limit from the right
  BreakClass orientation{BreakClass::SPlus};
  IndicatorChannel channel{};

  //! Two-valued step symbol of the model.
  PiecewiseSymbol symbol() const;
  double alpha_near() const { return channel.alpha_hi; }
  double alpha_far() const { return channel.alpha_lo; }
  Interval spectrum() const {
    return {std::min(alpha_minus, alpha_plus), std::max(alpha_minus, alpha_plus)};
  }
  //! The other end of the model arc.
  double far_end() const {
    return orientation == BreakClass::SPlus ? channel.zeta1 : channel.zeta2;
  }
};

JumpModelSymbol jump_model(const PiecewiseSymbol &symbol, double eta,
                           double eps = pi / 2);
JumpModelSymbol jump_model(double eta, double alpha_minus, double alpha_plus,
                           double eps = pi / 2);

//! Model state at time t through the phase-and-rescale reduction to the
//! unit indicator channel on the same arc.
std::complex<double> propagate_model_reduced(const JumpModelSymbol &model,
                                             const SpectralDensity &g, double t,
                                             std::complex<double> z);

} // namespace toescat

#include "toescat/model_channel.hpp"
#include "toescat/errors.hpp"
#include <algorithm>
#include <cmath>
#include <sstream>

namespace toescat {

using cd = std::complex<double>;

double sigma_of_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw DomainError("sigma requires 0 < lambda < 1");
  return std::log(1.0 / lambda - 1.0) / two_pi;
}

IndicatorChannel::IndicatorChannel(double z1, double z2, double lo, double hi)
    : zeta1(wrap_angle(z1)), zeta2(wrap_angle(z2)), alpha_lo(lo),
      alpha_hi(hi) {
  if (std::abs(wrap_signed(zeta2 - zeta1)) < 1e-12)
    throw DomainError("channel endpoints coincide");
}

double IndicatorChannel::arc_measure() const {
  return wrap_angle(zeta2 - zeta1) / two_pi;
}

double IndicatorChannel::chord() const {
  return 2.0 * std::abs(std::sin(0.5 * (zeta2 - zeta1)));
}

double kappa_of_lambda(double lambda, const IndicatorChannel &channel) {
  const double s = sigma_of_lambda(lambda);
  return std::sqrt(channel.chord() / (two_pi * lambda)) *
         std::exp(-pi * s * channel.arc_measure());
}

static cd checked_log(cd z, double zeta) {
  const cd L = std::log(1.0 - z * std::exp(cd(0.0, -zeta)));
  if (std::abs(L.imag()) > 0.5 * pi + 1e-12)
    throw DomainError("branch bound violated");
  return L;
}

cd eigenfunction_s(cd z, double lambda, const IndicatorChannel &channel) {
  if (!(std::abs(z) < 1.0))
    throw DomainError("eigenfunction needs |z| < 1");
  const double s = sigma_of_lambda(lambda);
  const cd L1 = checked_log(z, channel.zeta1);
  const cd L2 = checked_log(z, channel.zeta2);
  return kappa_of_lambda(lambda, channel) *
         std::exp(cd(-0.5, -s) * L1 + cd(-0.5, s) * L2);
}

cd eigenfunction_r(cd z, double lambda) {
  if (!(std::abs(z) < 1.0))
    throw DomainError("eigenfunction needs |z| < 1");
  if (!(lambda > -1.0 && lambda < 1.0))
    throw DomainError("regular eigenfunction needs -1 < lambda < 1");
  return std::sqrt(2.0 / pi) * std::pow(1.0 - lambda * lambda, 0.25) /
         (1.0 - 2.0 * lambda * z + z * z);
}

//==============================================================================
BumpProfile::BumpProfile(double lo, double hi) : m_lo(lo), m_hi(hi) {
  if (!(lo > 0.0 && hi < 1.0 && lo < hi))
    throw DomainError("bump support must lie strictly inside (0, 1)");
  const cd n2 = adaptive_integrate(
      [this](double x) {
        const double v = (*this)(x);
        return cd(v * v, 0.0);
      },
      lo, hi, 1e-13);
  m_scale = 1.0 / std::sqrt(n2.real());
}

double BumpProfile::operator()(double lambda) const {
  if (!(lambda > m_lo && lambda < m_hi))
    return 0.0;
  const double u = (2.0 * lambda - m_lo - m_hi) / (m_hi - m_lo);
  return m_scale * std::exp(-1.0 / (1.0 - u * u));
}

cd synthesize(const IndicatorChannel &channel, const SpectralDensity &g, cd z,
              double rtol) {
  return adaptive_integrate(
      [&](double lambda) {
        const double v = g.g(lambda);
        if (v == 0.0)
          return cd(0.0, 0.0);
        return eigenfunction_s(z, lambda, channel) * v;
      },
      g.lo, g.hi, rtol, 20);
}

//==============================================================================
ModelPropagator::ModelPropagator(const IndicatorChannel &channel,
                                 const SpectralDensity &g, double t,
                                 double max_log)
    : m_channel(channel), m_t(t) {
  if (!(g.lo > 0.0 && g.hi < 1.0 && g.lo < g.hi))
    throw DomainError("spectral density must be supported inside (0, 1)");
  const double edge = std::min(g.lo * (1.0 - g.lo), g.hi * (1.0 - g.hi));
  const double rate =
      std::abs(channel.rate() * t) + max_log / (two_pi * edge) + 1.0;
  const int panels =
      std::max(16, int(std::ceil((g.hi - g.lo) * rate / 6.0)));
  const auto &gl = gauss_legendre(16);
  const double h = (g.hi - g.lo) / panels;
  for (int p = 0; p < panels; ++p)
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
      const double lam = g.lo + h * (p + 0.5 * (gl.x[k] + 1.0));
      const double v = g.g(lam);
      if (v == 0.0)
        continue;
      const double w = 0.5 * h * gl.w[k];
      m_lambda.push_back(lam);
      m_sigma.push_back(sigma_of_lambda(lam));
      m_amp.push_back(w * kappa_of_lambda(lam, channel) * v *
                      std::exp(cd(0.0, -channel.energy(lam) * t)));
    }
}

cd ModelPropagator::operator()(cd L1, cd L2) const {
  const cd d = L1 - L2;
  cd sum = 0.0;
  for (std::size_t k = 0; k < m_amp.size(); ++k)
    sum += m_amp[k] * std::exp(cd(m_sigma[k] * d.imag(), -m_sigma[k] * d.real()));
  return std::exp(-0.5 * (L1 + L2)) * sum;
}

cd ModelPropagator::at(cd z) const {
  if (!(std::abs(z) < 1.0))
    throw DomainError("interior evaluation needs |z| < 1");
  return (*this)(checked_log(z, m_channel.zeta1),
                 checked_log(z, m_channel.zeta2));
}

Eigen::VectorXcd ModelPropagator::on_nodes(const CircleQuadrature &q) const {
  const auto &nodes = q.nodes();
  Eigen::VectorXcd out(Eigen::Index(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out(Eigen::Index(i)) = (*this)(q.log_factor(nodes[i], m_channel.zeta1),
                                   q.log_factor(nodes[i], m_channel.zeta2));
  return out;
}

double model_depth(const IndicatorChannel &channel, double t) {
  return 0.5 * pi * std::abs(channel.rate() * t) + 150.0;
}

CircleQuadrature model_quadrature(const IndicatorChannel &channel, double t,
                                  int far_panels) {
  const double depth = model_depth(channel, t);
  CircleQuadratureConfig cfg;
  cfg.far_panels = far_panels;
  return CircleQuadrature({{channel.zeta1, depth}, {channel.zeta2, depth}},
                          cfg);
}

ConcentrationProfile concentration_profile(const IndicatorChannel &channel,
                                           const BumpProfile &bump, double t,
                                           double eps) {
  if (!(eps > 0.0 && 2.0 * eps < std::min(channel.arc_measure(),
                                          1.0 - channel.arc_measure()) *
                                     two_pi))
    throw DomainError("neighbourhoods of the two endpoints overlap");
  const auto q = model_quadrature(channel, t);
  CircleQuadratureConfig cfg;
  const double max_log = model_depth(channel, t) + cfg.tail + 10.0;
  const ModelPropagator prop(channel, SpectralDensity::of(bump), t, max_log);
  const auto F = prop.on_nodes(q);
  ConcentrationProfile c;
  c.t = t;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto &node = q.nodes()[i];
    const double m = node.weight * std::norm(F(Eigen::Index(i)));
    if (std::abs(q.offset_from(node, channel.zeta1)) < eps)
      c.near1 += m;
    else if (std::abs(q.offset_from(node, channel.zeta2)) < eps)
      c.near2 += m;
    else
      c.elsewhere += m;
  }
  c.total = c.near1 + c.near2 + c.elsewhere;
  c.near1 /= c.total;
  c.near2 /= c.total;
  c.elsewhere /= c.total;
  return c;
}

PropagatorSample propagate(const IndicatorChannel &channel,
                           const BumpProfile &bump, double t,
                           const std::vector<cd> &z_grid, double eps) {
  PropagatorSample s;
  s.t = t;
  s.z_grid = z_grid;
  double max_log = 40.0;
  for (const auto &z : z_grid) {
    if (!(std::abs(z) <= 1.0 - 1e-6 + 1e-15))
      throw DomainError("grid radius must not exceed 1 - 1e-6");
    max_log = std::max(max_log, 2.0 * std::abs(std::log(1.0 - std::abs(z))) + 10.0);
  }
  const ModelPropagator prop(channel, SpectralDensity::of(bump), t, max_log);
  for (const auto &z : z_grid)
    s.values.push_back(prop.at(z));
  s.masses = concentration_profile(channel, bump, t, eps);
  return s;
}

//==============================================================================
PiecewiseSymbol JumpModelSymbol::symbol() const {
  std::ostringstream os;
  os.precision(12);
  os << "jump_model:" << eta;
  return PiecewiseSymbol::step(channel.zeta1, channel.zeta2, channel.alpha_hi,
                               channel.alpha_lo, os.str());
}

JumpModelSymbol jump_model(double eta, double alpha_minus, double alpha_plus,
                           double eps) {
  if (std::abs(alpha_minus - alpha_plus) <= PiecewiseSymbol::removable_tol)
    throw NotAJump("one-sided limits coincide");
  if (!(eps > 0.0 && eps < two_pi))
    throw DomainError("model arc length must lie in (0, 2pi)");
  JumpModelSymbol m;
  m.eta = wrap_angle(eta);
  m.eps = eps;
  m.alpha_minus = alpha_minus;
  m.alpha_plus = alpha_plus;
  if (alpha_minus > alpha_plus) {
    m.orientation = BreakClass::SPlus;
    m.channel = IndicatorChannel(eta - eps, eta, alpha_plus, alpha_minus);
  } else {
    m.orientation = BreakClass::SMinus;
    m.channel = IndicatorChannel(eta, eta + eps, alpha_minus, alpha_plus);
  }
  return m;
}

JumpModelSymbol jump_model(const PiecewiseSymbol &symbol, double eta,
                           double eps) {
  const auto &j = symbol.jump_at(eta);
  if (!j.is_jump())
    throw NotAJump("breakpoint is not a jump");
  return jump_model(j.eta, j.left_limit, j.right_limit, eps);
}

cd propagate_model_reduced(const JumpModelSymbol &model,
                           const SpectralDensity &g, double t, cd z) {
  const IndicatorChannel unit(model.channel.zeta1, model.channel.zeta2);
  const double tau = model.channel.rate() * t;
  const ModelPropagator prop(unit, g, tau,
                             2.0 * std::abs(std::log(1.0 - std::abs(z))) + 40.0);
  return std::exp(cd(0.0, -model.alpha_far() * t)) * prop.at(z);
}

} // namespace toescat

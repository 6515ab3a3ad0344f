#include "toescat/scattering.hpp"
#include "toescat/errors.hpp"
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace toescat {

using cd = std::complex<double>;

namespace {

double cauchy_of(const std::vector<Eigen::VectorXcd> &v) {
  double c = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      c = std::max(c, (v[j] - v[i]).norm());
  return c;
}

//! Anchors closer than `tol` are merged, keeping the larger depth.
std::vector<AnchorSpec> merge_anchors(std::vector<AnchorSpec> in,
                                      double tol = 1e-9) {
  std::vector<AnchorSpec> out;
  for (auto a : in) {
    a.angle = wrap_angle(a.angle);
    bool merged = false;
    for (auto &b : out)
      if (std::abs(wrap_signed(a.angle - b.angle)) < tol) {
        b.depth = std::max(b.depth, a.depth);
        merged = true;
      }
    if (!merged)
      out.push_back(a);
  }
  return out;
}

double max_depth(const std::vector<AnchorSpec> &anchors) {
  double d = 0.0;
  for (const auto &a : anchors)
    d = std::max(d, a.depth);
  return d;
}

Eigen::VectorXd window_weights(const Eigen::VectorXd &lambda, Interval band) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double u = (2.0 * lambda(i) - band.lo - band.hi) / band.length();
    if (std::abs(u) < 1.0)
      w(i) = std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return w;
}

} // namespace

//==============================================================================
WaveApprox wave_approx_thick(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const Eigen::VectorXcd &f, int sign,
                             const std::vector<double> &t_list) {
  const auto T = TruncatedToeplitz::build(symbol, spaces.M() + 1);
  return wave_approx_thick(symbol, spaces, T, f, sign, t_list);
}

WaveApprox wave_approx_thick(const PiecewiseSymbol &symbol,
                             const DiscreteSpaces &spaces,
                             const TruncatedToeplitz &T,
                             const Eigen::VectorXcd &f, int sign,
                             const std::vector<double> &t_list) {
  if (T.size() != spaces.M() + 1)
    throw InvalidConfig("Toeplitz size does not match the mode cutoff");
  if (f.size() != spaces.N())
    throw InvalidConfig("state is not a grid state of this discretization");
  WaveApprox w;
  w.pair = WaveApprox::Pair::Thick;
  w.sign = sign >= 0 ? 1 : -1;
  w.t_list = t_list;
  w.f_norm = spaces.norm(f);
  for (double t : t_list) {
    const double ts = w.sign * std::abs(t);
    const auto moved = evolve_mult(symbol, spaces, f, ts);
    w.vectors.push_back(T.evolve(spaces.hardy_coeffs(moved), -ts));
    w.norms.push_back(w.vectors.back().norm());
  }
  w.cauchy = cauchy_of(w.vectors);
  return w;
}

std::vector<double> hardy_mass_profile(const PiecewiseSymbol &symbol,
                                       const DiscreteSpaces &spaces,
                                       const Eigen::VectorXcd &f,
                                       const std::vector<double> &t_list) {
  std::vector<double> out;
  for (double t : t_list)
    out.push_back(spaces.hardy_norm2_full(evolve_mult(symbol, spaces, f, t)));
  return out;
}

double fitted_decay_exponent(const std::vector<double> &t,
                             const std::vector<double> &y) {
  if (t.size() != y.size() || t.size() < 2)
    throw InvalidConfig("decay fit needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0))
      return std::numeric_limits<double>::infinity();
    const double lx = std::log(t[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

//==============================================================================
ChannelWorkspace::ChannelWorkspace(const PiecewiseSymbol &symbol,
                                   const WorkspaceConfig &cfg)
    : m_symbol(symbol), m_cfg(cfg) {
  if (cfg.M < 8)
    throw InvalidConfig("mode cutoff must be >= 8");
  std::vector<AnchorSpec> anchors;
  std::vector<double> cuts = symbol.breakpoints();
  for (const auto &j : symbol.jumps()) {
    if (!j.is_jump())
      continue;
    m_jumps.push_back(jump_model(symbol, j.eta, cfg.eps));
    const double size = std::abs(j.right_limit - j.left_limit);
    anchors.push_back({j.eta, cfg.base_depth + 0.5 * pi * size * cfg.t_reach});
    anchors.push_back({m_jumps.back().far_end(), cfg.base_depth});
    cuts.push_back(m_jumps.back().far_end());
  }
  AugmentedSpaceConfig sc;
  sc.M = cfg.M;
  sc.anchors = merge_anchors(anchors);
  sc.cuts = cuts;
  sc.rel_tol = cfg.rel_tol;
  sc.far_panels = cfg.far_panels;
  m_space = std::make_unique<AugmentedHardySpace>(sc);

  std::vector<PiecewiseSymbol> models;
  for (const auto &m : m_jumps)
    models.push_back(m.symbol());
  std::vector<const PiecewiseSymbol *> ops{&m_symbol};
  for (const auto &m : models)
    ops.push_back(&m);
  for (const auto &A : m_space->compress(ops))
    m_eigen.push_back(hermitian_eigen(A));
}

int ChannelWorkspace::jump_index(double eta) const {
  for (std::size_t k = 0; k < m_jumps.size(); ++k)
    if (std::abs(wrap_signed(m_jumps[k].eta - eta)) < 1e-9)
      return int(k);
  return -1;
}

const HermitianEigen &ChannelWorkspace::eigen(int op) const {
  if (op < -1 || op >= int(m_jumps.size()))
    throw InvalidConfig("operator index out of range");
  return m_eigen[std::size_t(op + 1)];
}

Eigen::MatrixXcd ChannelWorkspace::evolve(int op, const Eigen::MatrixXcd &c,
                                          double t) const {
  const auto &E = eigen(op);
  Eigen::VectorXcd phase(E.values.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(cd(0.0, -E.values(i) * t));
  return E.vectors * (phase.asDiagonal() * (E.vectors.adjoint() * c));
}

Eigen::MatrixXcd ChannelWorkspace::filter(int op, const Eigen::MatrixXcd &c,
                                          Interval band) const {
  const auto &E = eigen(op);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < E.values.size(); ++i)
    if (E.values(i) > band.lo && E.values(i) < band.hi)
      idx.push_back(i);
  if (idx.empty())
    return Eigen::MatrixXcd::Zero(c.rows(), c.cols());
  const auto Vb = E.vectors(Eigen::all, idx);
  return Vb * (Vb.adjoint() * c);
}

Eigen::MatrixXcd ChannelWorkspace::smooth_filter(int op, const Eigen::MatrixXcd &c,
                                                 Interval band) const {
  const auto &E = eigen(op);
  const auto w = window_weights(E.values, band);
  return E.vectors * (w.asDiagonal() * (E.vectors.adjoint() * c));
}

Eigen::VectorXcd ChannelWorkspace::thick_state(
    const std::function<cd(double)> &g, double t) const {
  const auto &q = m_space->quadrature();
  return m_space->project([&](const CircleNode &node) {
    return std::exp(cd(0.0, -symbol_at(m_symbol, q, node) * t)) * g(node.angle);
  });
}

Eigen::VectorXcd ChannelWorkspace::model_state(int k, const SpectralDensity &g,
                                               double t) const {
  if (k < 0 || k >= int(m_jumps.size()))
    throw InvalidConfig("jump index out of range");
  const auto &anchors = m_space->quadrature().anchors();
  const double reach = max_depth(anchors) + 8.0 * m_space->config().width + 10.0;
  const ModelPropagator prop(m_jumps[std::size_t(k)].channel, g, t, reach);
  return m_space->project_nodes(prop.on_nodes(m_space->quadrature()));
}

//==============================================================================
WaveApprox wave_approx_jump(const ChannelWorkspace &ws, int jump,
                            const SpectralDensity &g, int sign,
                            const std::vector<double> &t_list) {
  WaveApprox w;
  w.pair = WaveApprox::Pair::Jump;
  w.sign = sign >= 0 ? 1 : -1;
  w.t_list = t_list;
  const Eigen::VectorXcd f = ws.model_state(jump, g, 0.0);
  w.f_norm = f.norm();
  for (double t : t_list) {
    const double ts = w.sign * std::abs(t);
    w.vectors.push_back(ws.evolve(-1, ws.evolve(jump, f, ts), -ts));
    w.norms.push_back(w.vectors.back().norm());
  }
  w.cauchy = cauchy_of(w.vectors);
  return w;
}

//==============================================================================
CookReport cook_diagnostic(const PiecewiseSymbol &symbol,
                           const JumpModelSymbol &model,
                           const SpectralDensity &g, double t_max, int samples,
                           double t_fit) {
  if (!(t_max > 1.0) || samples < 3)
    throw InvalidConfig("Cook diagnostic needs t_max > 1 and >= 3 samples");
  const auto model_symbol = model.symbol();
  CircleQuadratureConfig qc;
  qc.cuts = symbol.breakpoints();
  CookReport r;
  for (int i = 0; i < samples; ++i) {
    const double t = std::exp(std::log(t_max) * i / (samples - 1));
    const double depth = model_depth(model.channel, t);
    const CircleQuadrature q({{model.channel.zeta1, depth},
                              {model.channel.zeta2, depth}},
                             qc);
    const ModelPropagator prop(model.channel, g, t, depth + qc.tail + 10.0);
    const auto F = prop.on_nodes(q);
    double s = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const auto &node = q.nodes()[k];
      const double d =
          symbol_at(symbol, q, node) - symbol_at(model_symbol, q, node);
      s += node.weight * d * d * std::norm(F(Eigen::Index(k)));
    }
    r.t.push_back(t);
    r.g.push_back(std::sqrt(s));
  }
  for (std::size_t i = 0; i + 1 < r.t.size(); ++i)
    r.integral += 0.5 * (r.t[i + 1] - r.t[i]) * (r.g[i] + r.g[i + 1]);
  std::vector<double> tt, gg;
  for (std::size_t i = 0; i < r.t.size(); ++i)
    if (r.t[i] >= t_fit * (1.0 - 1e-12)) {
      tt.push_back(r.t[i]);
      gg.push_back(r.g[i]);
    }
  r.tail_exponent = fitted_decay_exponent(tt, gg);
  return r;
}

//==============================================================================
double channel_orthogonality(const PiecewiseSymbol &symbol,
                             const ChannelState &a, const ChannelState &b,
                             double t) {
  if (a.kind == ChannelState::Kind::Thick && b.kind == ChannelState::Kind::Thick)
    throw InvalidConfig("overlap needs at least one jump channel");
  std::vector<AnchorSpec> anchors;
  for (const auto *s : {&a, &b})
    if (s->kind == ChannelState::Kind::Jump) {
      const double depth = model_depth(s->model.channel, t);
      anchors.push_back({s->model.channel.zeta1, depth});
      anchors.push_back({s->model.channel.zeta2, depth});
    }
  CircleQuadratureConfig qc;
  qc.cuts = symbol.breakpoints();
  const CircleQuadrature q(merge_anchors(anchors), qc);
  const double reach = max_depth(q.anchors()) + qc.tail + 10.0;

  auto values = [&](const ChannelState &s) -> Eigen::VectorXcd {
    if (s.kind == ChannelState::Kind::Jump)
      return ModelPropagator(s.model.channel, s.g, t, reach).on_nodes(q);
    Eigen::VectorXcd v(Eigen::Index(q.size()));
    for (std::size_t k = 0; k < q.size(); ++k) {
      const auto &node = q.nodes()[k];
      v(Eigen::Index(k)) =
          std::exp(cd(0.0, -symbol_at(symbol, q, node) * t)) * s.f(node.angle);
    }
    return v;
  };
  const auto va = values(a), vb = values(b);
  cd ip = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double w = q.nodes()[k].weight;
    const auto i = Eigen::Index(k);
    ip += w * std::conj(va(i)) * vb(i);
    na += w * std::norm(va(i));
    nb += w * std::norm(vb(i));
  }
  return std::abs(ip) / std::sqrt(na * nb);
}

//==============================================================================
double ChannelDecomposition::thick_mass() const {
  double s = 0.0;
  for (const auto &c : channels)
    if (c.kind == "thick")
      s += c.mass;
  return s;
}

double ChannelDecomposition::jump_mass() const {
  double s = 0.0;
  for (const auto &c : channels)
    if (c.kind == "jump")
      s += c.mass;
  return s;
}

Eigen::VectorXcd band_state(const ChannelWorkspace &ws, Interval band,
                            unsigned seed, int degree) {
  if (degree < 0 || degree > ws.space().modes() - 1)
    throw InvalidConfig("seed degree out of range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd a(degree + 1);
  for (auto &x : a)
    x = cd(normal(rng), normal(rng));
  Eigen::VectorXcd f = ws.smooth_filter(-1, ws.space().from_modes(a), band);
  const double n = f.norm();
  if (!(n > 0.0))
    throw FrameDeficient("band carries no spectrum of the truncated operator");
  return f / n;
}

namespace {

struct ChannelPlan {
  std::vector<Arc> arcs;
  std::vector<int> jumps;
};

ChannelPlan plan_channels(const ChannelWorkspace &ws, Interval band, int sign,
                          const MultiplicityReport &mult) {
  ChannelPlan p;
  const auto arcs = preimage_arcs(ws.symbol(), band.lo, band.hi);
  p.arcs = sign > 0 ? arcs.plus : arcs.minus;
  for (double eta : sign > 0 ? mult.jumps_plus : mult.jumps_minus) {
    const int k = ws.jump_index(eta);
    if (k < 0)
      throw NotAJump("jump point without a model");
    p.jumps.push_back(k);
  }
  return p;
}

std::vector<ChannelMass> channel_masses(const ChannelWorkspace &ws,
                                        const ChannelPlan &plan, Interval band,
                                        double t, const Eigen::VectorXcd &f,
                                        double gs_tol) {
  const int dim = ws.space().dim();
  const int M = ws.space().modes() - 1;
  const double sp = two_pi / M;
  Eigen::MatrixXcd Q(dim, 0);
  std::vector<ChannelMass> out;

  auto absorb = [&](ChannelMass cm, const Eigen::MatrixXcd &V,
                    const std::vector<double> &ref) {
    const Eigen::Index before = Q.cols();
    cm.vectors = extend_orthonormal(Q, V, gs_tol, ref);
    cm.mass = (Q.rightCols(Q.cols() - before).adjoint() * f).squaredNorm();
    out.push_back(cm);
  };

  for (const auto &arc : plan.arcs) {
    std::vector<double> centers;
    for (double c = arc.alpha + 0.5 * sp; c < arc.beta; c += sp)
      centers.push_back(c);
    if (centers.empty())
      centers.push_back(arc.mid());
    Eigen::MatrixXcd S(dim, Eigen::Index(centers.size()));
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double c = centers[j];
      S.col(Eigen::Index(j)) = ws.thick_state(
          [c, sp](double x) {
            const double d = wrap_signed(x - c) / sp;
            return cd(std::exp(-0.5 * d * d), 0.0);
          },
          t);
    }
    const std::vector<double> ref(centers.size(),
                                  std::sqrt(sp * std::sqrt(pi) / two_pi));
    ChannelMass cm;
    cm.kind = "thick";
    cm.eta = wrap_angle(arc.mid());
    cm.arc = arc;
    absorb(cm, ws.filter(-1, ws.evolve(-1, S, -t), band), ref);
  }

  for (int k : plan.jumps) {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(M + 1, M / 2 + 1);
    Eigen::MatrixXcd seeds(dim, M / 2 + 1);
    for (Eigen::Index j = 0; j < seeds.cols(); ++j)
      seeds.col(j) = ws.space().from_modes(E.col(j));
    Eigen::MatrixXcd A(dim, 0);
    extend_orthonormal(A, ws.filter(k, seeds, band), gs_tol,
                       std::vector<double>(std::size_t(seeds.cols()), 1.0));
    ChannelMass cm;
    cm.kind = "jump";
    cm.eta = ws.jumps()[std::size_t(k)].eta;
    absorb(cm, ws.filter(-1, ws.evolve(-1, ws.evolve(k, A, t), -t), band),
           std::vector<double>(std::size_t(A.cols()), 1.0));
  }
  return out;
}

} // namespace

ChannelDecomposition completeness_defect(const ChannelWorkspace &ws,
                                         Interval band, int sign,
                                         const Eigen::VectorXcd &f,
                                         const CompletenessConfig &cfg) {
  if (f.size() != ws.space().dim())
    throw InvalidConfig("state does not belong to the workspace");
  const auto mult = multiplicity(ws.symbol(), band.lo, band.hi);
  ChannelDecomposition d;
  d.band = band;
  d.sign = sign >= 0 ? 1 : -1;
  d.t_star = cfg.t_star;
  d.multiplicity = mult.m;
  d.f_norm2 = f.squaredNorm();
  const auto plan = plan_channels(ws, band, d.sign, mult);
  const double t = d.sign * std::abs(cfg.t_star);
  d.channels = channel_masses(ws, plan, band, t, f, cfg.gs_tol);
  d.defect = d.f_norm2;
  for (const auto &c : d.channels) {
    d.defect -= c.mass;
    if (c.vectors > 0)
      ++d.frame_count;
  }
  if (cfg.with_cauchy) {
    const auto early = channel_masses(ws, plan, band, 0.75 * t, f, cfg.gs_tol);
    double defect_early = d.f_norm2;
    d.cauchy = 0.0;
    for (std::size_t i = 0; i < early.size(); ++i) {
      defect_early -= early[i].mass;
      d.cauchy = std::max(d.cauchy, std::abs(early[i].mass - d.channels[i].mass));
    }
    d.cauchy = std::max(d.cauchy, std::abs(defect_early - d.defect));
  }
  if (d.frame_count < d.multiplicity) {
    std::ostringstream os;
    os << "channel frames span " << d.frame_count << " channels, multiplicity is "
       << d.multiplicity;
    throw FrameDeficient(os.str());
  }
  return d;
}

ChannelDecomposition completeness_defect(const ChannelWorkspace &ws,
                                         Interval band, int sign,
                                         const CompletenessConfig &cfg) {
  return completeness_defect(ws, band, sign,
                             band_state(ws, band, cfg.seed, cfg.seed_degree), cfg);
}

TwoSidedReport two_sided_report(const ChannelWorkspace &ws, Interval band,
                                const CompletenessConfig &cfg) {
  const auto f = band_state(ws, band, cfg.seed, cfg.seed_degree);
  TwoSidedReport r;
  r.forward = completeness_defect(ws, band, 1, f, cfg);
  r.backward = completeness_defect(ws, band, -1, f, cfg);
  auto dominant = [](const ChannelDecomposition &d) {
    return d.thick_mass() >= d.jump_mass() ? "thick" : "jump";
  };
  r.dominant_forward = dominant(r.forward);
  r.dominant_backward = dominant(r.backward);
  return r;
}

} // namespace toescat

#include "toescat/hardy_space.hpp"
#include "toescat/errors.hpp"
#include <algorithm>
#include <cmath>

namespace toescat {

using cd = std::complex<double>;

namespace {
constexpr double mode_floor = -70.0; // below this modes are negligible
constexpr int chunk_nodes = 96;

CircleQuadratureConfig quad_config(const AugmentedSpaceConfig &cfg) {
  CircleQuadratureConfig q;
  q.tail = 8.0 * cfg.width;
  q.far_panels = cfg.far_panels > 0 ? cfg.far_panels : 4 * (cfg.M + 1);
  q.cuts = cfg.cuts;
  return q;
}
} // namespace

double symbol_at(const PiecewiseSymbol &symbol, const CircleQuadrature &q,
                 const CircleNode &node) {
  if (node.anchor >= 0)
    return symbol.eval_offset(q.anchors()[std::size_t(node.anchor)].angle,
                              node.offset);
  if (symbol.breakpoint_index(node.angle) >= 0)
    return symbol.eval(node.angle, Side::Right);
  return symbol.eval(node.angle);
}

AugmentedHardySpace::AugmentedHardySpace(const AugmentedSpaceConfig &cfg)
    : m_cfg(cfg), m_quad(cfg.anchors, quad_config(cfg)) {
  const double reach = 8.0 * cfg.width;
  const double u_top = std::log(quad_config(cfg).window);
  const double shallow = u_top - reach;

  for (int n = 0; n <= cfg.M; ++n)
    m_funcs.push_back({-1, n, 0.0, 0.0, 1.0});
  std::vector<std::vector<int>> own(cfg.anchors.size());
  for (std::size_t a = 0; a < cfg.anchors.size(); ++a)
    for (double c = 0.0; c >= -cfg.anchors[a].depth - 1e-9; c -= cfg.spacing)
      for (double s : cfg.freqs) {
        own[a].push_back(int(m_funcs.size()));
        m_funcs.push_back({int(a), 0, c, s, 1.0});
      }
  std::vector<int> global;
  for (int n = 0; n <= cfg.M; ++n)
    global.push_back(n);
  for (std::size_t f = std::size_t(cfg.M + 1); f < m_funcs.size(); ++f)
    if (m_funcs[f].center >= shallow)
      global.push_back(int(f));

  // far nodes
  const auto &nodes = m_quad.nodes();
  std::vector<int> far;
  std::vector<std::vector<int>> graded(cfg.anchors.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].anchor < 0)
      far.push_back(int(i));
    else
      graded[std::size_t(nodes[i].anchor)].push_back(int(i));
  }
  for (std::size_t k = 0; k < far.size(); k += 1024) {
    Block b;
    b.nodes.assign(far.begin() + long(k),
                   far.begin() + long(std::min(far.size(), k + 1024)));
    b.funcs = global;
    m_blocks.push_back(std::move(b));
  }
  for (std::size_t a = 0; a < graded.size(); ++a) {
    auto &list = graded[a];
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      return nodes[std::size_t(x)].log_radius < nodes[std::size_t(y)].log_radius;
    });
    for (std::size_t k = 0; k < list.size(); k += chunk_nodes) {
      Block b;
      b.nodes.assign(list.begin() + long(k),
                     list.begin() + long(std::min(list.size(), k + chunk_nodes)));
      const double u_lo = nodes[std::size_t(b.nodes.front())].log_radius;
      const double u_hi = nodes[std::size_t(b.nodes.back())].log_radius;
      if (u_hi > mode_floor)
        for (int f : global)
          if (m_funcs[std::size_t(f)].anchor != int(a))
            b.funcs.push_back(f);
      for (int f : own[a]) {
        const double c = m_funcs[std::size_t(f)].center;
        if (c >= u_lo - reach && c <= u_hi + reach)
          b.funcs.push_back(f);
      }
      std::sort(b.funcs.begin(), b.funcs.end());
      m_blocks.push_back(std::move(b));
    }
  }

  // Gram matrix
  const int B = int(m_funcs.size());
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(B, B);
  for (const auto &b : m_blocks) {
    const auto X = evaluate(b, b.funcs);
    Eigen::VectorXd w(Eigen::Index(b.nodes.size()));
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
      w(Eigen::Index(i)) = nodes[std::size_t(b.nodes[i])].weight;
    const Eigen::MatrixXcd sub = X.adjoint() * (w.asDiagonal() * X);
    for (std::size_t j = 0; j < b.funcs.size(); ++j)
      for (std::size_t i = 0; i < b.funcs.size(); ++i)
        G(b.funcs[i], b.funcs[j]) += sub(Eigen::Index(i), Eigen::Index(j));
  }
  for (int f = cfg.M + 1; f < B; ++f) {
    const double d = G(f, f).real();
    if (!(d > 0.0))
      throw QuadratureNonConvergence("atom with vanishing norm");
    m_funcs[std::size_t(f)].scale = 1.0 / std::sqrt(d);
  }
  Eigen::VectorXd sc(B);
  for (int f = 0; f < B; ++f)
    sc(f) = m_funcs[std::size_t(f)].scale;
  G = sc.asDiagonal() * G * sc.asDiagonal();
  G.topLeftCorner(cfg.M + 1, cfg.M + 1).setIdentity();
  G = 0.5 * (G + G.adjoint()).eval();

  m_chol = pivoted_cholesky(G, cfg.rel_tol, cfg.M + 1);
  for (int k = 0; k <= cfg.M; ++k)
    if (m_chol.pivots.size() <= std::size_t(k) || m_chol.pivots[std::size_t(k)] != k)
      throw QuadratureNonConvergence("mode basis lost in orthonormalization");
  m_pos.assign(std::size_t(B), -1);
  for (std::size_t k = 0; k < m_chol.pivots.size(); ++k)
    m_pos[std::size_t(m_chol.pivots[k])] = int(k);
}

Eigen::MatrixXcd AugmentedHardySpace::evaluate(const Block &b,
                                               const std::vector<int> &funcs) const {
  const auto &nodes = m_quad.nodes();
  const Eigen::Index nr = Eigen::Index(b.nodes.size());
  Eigen::MatrixXcd X(nr, Eigen::Index(funcs.size()));
  const double inv2w2 = 1.0 / (2.0 * m_cfg.width * m_cfg.width);
  const std::size_t na = m_cfg.anchors.size();
  std::vector<cd> logs(na);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const auto &node = nodes[std::size_t(b.nodes[std::size_t(r)])];
    for (std::size_t a = 0; a < na; ++a)
      logs[a] = cd(NAN, NAN);
    const cd e = std::exp(cd(0.0, node.angle));
    cd power = 1.0;
    int power_n = 0;
    for (std::size_t k = 0; k < funcs.size(); ++k) {
      const auto &f = m_funcs[std::size_t(funcs[k])];
      if (f.anchor < 0) {
        while (power_n < f.n) {
          power *= e;
          ++power_n;
        }
        X(r, Eigen::Index(k)) = power;
        continue;
      }
      auto &L = logs[std::size_t(f.anchor)];
      if (std::isnan(L.real()))
        L = m_quad.log_factor(node, m_cfg.anchors[std::size_t(f.anchor)].angle);
      const cd g = L - f.center;
      X(r, Eigen::Index(k)) =
          f.scale * std::exp(-0.5 * L - cd(0.0, f.freq) * L - g * g * inv2w2);
    }
  }
  return X;
}

std::vector<int> AugmentedHardySpace::kept(const Block &b) const {
  std::vector<int> out;
  for (int f : b.funcs)
    if (m_pos[std::size_t(f)] >= 0)
      out.push_back(f);
  return out;
}

std::vector<Eigen::MatrixXcd> AugmentedHardySpace::compress(
    const std::vector<const PiecewiseSymbol *> &symbols) const {
  const int r = dim();
  const auto &nodes = m_quad.nodes();
  std::vector<Eigen::MatrixXcd> H(symbols.size(), Eigen::MatrixXcd::Zero(r, r));
  for (const auto &b : m_blocks) {
    const auto fk = kept(b);
    if (fk.empty())
      continue;
    const auto X = evaluate(b, fk);
    std::vector<int> pos(fk.size());
    for (std::size_t i = 0; i < fk.size(); ++i)
      pos[i] = m_pos[std::size_t(fk[i])];
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      Eigen::VectorXd w(Eigen::Index(b.nodes.size()));
      for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        const auto &node = nodes[std::size_t(b.nodes[i])];
        w(Eigen::Index(i)) = node.weight * symbol_at(*symbols[s], m_quad, node);
      }
      const Eigen::MatrixXcd sub = X.adjoint() * (w.asDiagonal() * X);
      for (std::size_t j = 0; j < fk.size(); ++j)
        for (std::size_t i = 0; i < fk.size(); ++i)
          H[s](pos[i], pos[j]) += sub(Eigen::Index(i), Eigen::Index(j));
    }
  }
  const int m = modes();
  const auto R = m_chol.R.triangularView<Eigen::Upper>();
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    const auto c = symbols[s]->coefficient_range(m);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        H[s](j, k) = c[std::size_t(j - k + m)];
    Eigen::MatrixXcd Z = R.adjoint().solve(H[s]);
    Eigen::MatrixXcd A = R.adjoint().solve(Z.adjoint()).adjoint();
    H[s] = 0.5 * (A + A.adjoint());
  }
  return H;
}

Eigen::MatrixXcd AugmentedHardySpace::compress(const PiecewiseSymbol &symbol) const {
  return compress(std::vector<const PiecewiseSymbol *>{&symbol})[0];
}

Eigen::VectorXcd AugmentedHardySpace::from_modes(const Eigen::VectorXcd &a) const {
  if (a.size() > modes())
    throw InvalidConfig("more modes than the space holds");
  return m_chol.R.leftCols(a.size()) * a;
}

Eigen::VectorXcd AugmentedHardySpace::project_nodes(const Eigen::VectorXcd &values) const {
  const auto &nodes = m_quad.nodes();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim());
  for (const auto &b : m_blocks) {
    const auto fk = kept(b);
    if (fk.empty())
      continue;
    const auto X = evaluate(b, fk);
    Eigen::VectorXcd wf(Eigen::Index(b.nodes.size()));
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
      wf(Eigen::Index(i)) = nodes[std::size_t(b.nodes[i])].weight *
                            values(b.nodes[i]);
    const Eigen::VectorXcd part = X.adjoint() * wf;
    for (std::size_t i = 0; i < fk.size(); ++i)
      rhs(m_pos[std::size_t(fk[i])]) += part(Eigen::Index(i));
  }
  return m_chol.R.triangularView<Eigen::Upper>().adjoint().solve(rhs);
}

Eigen::VectorXcd AugmentedHardySpace::project(
    const std::function<cd(const CircleNode &)> &f) const {
  const auto &nodes = m_quad.nodes();
  Eigen::VectorXcd v(Eigen::Index(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    v(Eigen::Index(i)) = f(nodes[i]);
  return project_nodes(v);
}

Eigen::VectorXcd AugmentedHardySpace::to_nodes(const Eigen::VectorXcd &coords) const {
  const Eigen::VectorXcd beta =
      m_chol.R.triangularView<Eigen::Upper>().solve(coords);
  const auto &nodes = m_quad.nodes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index(nodes.size()));
  for (const auto &b : m_blocks) {
    const auto fk = kept(b);
    if (fk.empty())
      continue;
    const auto X = evaluate(b, fk);
    Eigen::VectorXcd c(Eigen::Index(fk.size()));
    for (std::size_t i = 0; i < fk.size(); ++i)
      c(Eigen::Index(i)) = beta(m_pos[std::size_t(fk[i])]);
    const Eigen::VectorXcd v = X * c;
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
      out(b.nodes[i]) += v(Eigen::Index(i));
  }
  return out;
}

double AugmentedHardySpace::node_norm2(const Eigen::VectorXcd &values) const {
  double s = 0.0;
  const auto &nodes = m_quad.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s += nodes[i].weight * std::norm(values(Eigen::Index(i)));
  return s;
}

} // namespace toescat

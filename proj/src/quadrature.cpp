#include "toescat/quadrature.hpp"
#include "toescat/symbol.hpp"
#include <algorithm>
#include <map>
#include <mutex>

namespace toescat {

using cd = std::complex<double>;

const GaussRule &gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end())
    return it->second;
  GaussRule r;
  r.x.resize(std::size_t(order));
  r.w.resize(std::size_t(order));
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    r.x[std::size_t(order - 1 - i)] = x;
    r.w[std::size_t(order - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(r)).first->second;
}

static cd panel_sum(const std::function<cd(double)> &f, double a, double b) {
  const auto &g = gauss_legendre(16);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  cd s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i)
    s += g.w[i] * f(c + h * g.x[i]);
  return s * h;
}

cd adaptive_integrate(const std::function<cd(double)> &f, double a, double b,
                      double rtol, int max_depth, double abs_floor) {
  struct Item {
    double a, b;
    cd value;
    int depth;
  };
  std::vector<Item> stack{{a, b, panel_sum(f, a, b), 0}};
  cd total = 0.0;
  const double scale_guess = std::abs(stack[0].value);
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const double m = 0.5 * (it.a + it.b);
    const cd left = panel_sum(f, it.a, m), right = panel_sum(f, m, it.b);
    const double err = std::abs(left + right - it.value);
    const double scale = std::max(scale_guess, std::abs(total + left + right));
    if (err <= rtol * scale || err <= abs_floor) {
      total += left + right;
      continue;
    }
    if (it.depth + 1 >= max_depth)
      throw QuadratureNonConvergence("adaptive quadrature exceeded max depth");
    stack.push_back({it.a, m, left, it.depth + 1});
    stack.push_back({m, it.b, right, it.depth + 1});
  }
  return total;
}

cd log_one_minus(double delta) {
  const double s = std::sin(0.5 * delta);
  const double arg = 0.5 * delta - (s > 0.0 ? 0.5 * pi : -0.5 * pi);
  return {std::log(2.0 * std::abs(s)), arg};
}

//==============================================================================
CircleQuadrature::CircleQuadrature(std::vector<AnchorSpec> anchors,
                                   const CircleQuadratureConfig &cfg)
    : m_anchors(std::move(anchors)) {
  const auto &g = gauss_legendre(cfg.order);
  const double u_top = std::log(cfg.window);
  const double d_top = 2.0 * std::asin(0.5 * cfg.window);
  for (auto &a : m_anchors)
    a.angle = wrap_angle(a.angle);
  for (std::size_t i = 0; i < m_anchors.size(); ++i)
    for (std::size_t j = i + 1; j < m_anchors.size(); ++j)
      if (std::abs(wrap_signed(m_anchors[i].angle - m_anchors[j].angle)) <
          2.5 * d_top)
        throw InvalidConfig("quadrature anchors are too close");

  // graded windows
  for (std::size_t ia = 0; ia < m_anchors.size(); ++ia) {
    const auto &an = m_anchors[ia];
    const double u_bot = -an.depth - cfg.tail;
    const int npan = std::max(1, int(std::ceil((u_top - u_bot) / cfg.panel)));
    const double h = (u_top - u_bot) / npan;
    for (int side : {-1, 1})
      for (int p = 0; p < npan; ++p)
        for (std::size_t k = 0; k < g.x.size(); ++k) {
          const double u = u_bot + h * (p + 0.5 * (g.x[k] + 1.0));
          const double mag = 2.0 * std::asin(0.5 * std::exp(u));
          CircleNode q;
          q.anchor = int(ia);
          q.offset = side * mag;
          q.angle = wrap_angle(an.angle + q.offset);
          q.log_radius = u;
          q.weight = 0.5 * h * g.w[k] * std::exp(u) / std::cos(0.5 * mag) /
                     two_pi;
          m_nodes.push_back(q);
        }
  }

  // far region: gaps between windows, split at cut points
  std::vector<std::pair<double, double>> gaps;
  if (m_anchors.empty()) {
    gaps.push_back({0.0, two_pi});
  } else {
    std::vector<double> centers;
    for (const auto &a : m_anchors)
      centers.push_back(a.angle);
    std::sort(centers.begin(), centers.end());
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double lo = centers[i] + d_top;
      const double hi = (i + 1 < centers.size() ? centers[i + 1]
                                               : centers[0] + two_pi) -
                        d_top;
      gaps.push_back({lo, hi});
    }
  }
  for (const auto &[lo, hi] : gaps) {
    std::vector<double> edges{lo};
    for (double c : cfg.cuts)
      for (double shift : {-two_pi, 0.0, two_pi}) {
        const double x = wrap_angle(c) + shift;
        if (x > lo + 1e-9 && x < hi - 1e-9)
          edges.push_back(x);
      }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double a = edges[e], b = edges[e + 1];
      const int npan =
          std::max(1, int(std::ceil(cfg.far_panels * (b - a) / two_pi)));
      const double h = (b - a) / npan;
      for (int p = 0; p < npan; ++p)
        for (std::size_t k = 0; k < g.x.size(); ++k) {
          CircleNode q;
          q.angle = wrap_angle(a + h * (p + 0.5 * (g.x[k] + 1.0)));
          q.weight = 0.5 * h * g.w[k] / two_pi;
          m_nodes.push_back(q);
        }
    }
  }
}

double CircleQuadrature::offset_from(const CircleNode &q, double c) const {
  if (q.anchor >= 0) {
    const double a = m_anchors[std::size_t(q.anchor)].angle;
    const double d = wrap_signed(a - c);
    if (std::abs(d) <= 1e-12)
      return q.offset;
    return wrap_signed(d + q.offset);
  }
  return wrap_signed(q.angle - c);
}

cd CircleQuadrature::log_factor(const CircleNode &q, double c) const {
  if (q.anchor >= 0 &&
      std::abs(wrap_signed(m_anchors[std::size_t(q.anchor)].angle - c)) <=
          1e-12) {
    const double s = q.offset;
    return {q.log_radius, 0.5 * s - (s > 0.0 ? 0.5 * pi : -0.5 * pi)};
  }
  return log_one_minus(offset_from(q, c));
}

} // namespace toescat

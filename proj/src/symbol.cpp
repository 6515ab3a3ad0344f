#include "toescat/symbol.hpp"
#include "toescat/errors.hpp"
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace toescat {

using cd = std::complex<double>;

double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0)
    y += two_pi;
  if (y >= two_pi)
    y = 0.0;
  return y;
}

double wrap_signed(double x) {
  double y = wrap_angle(x + pi) - pi;
  return y;
}

std::string to_string(BreakClass c) {
  switch (c) {
  case BreakClass::SPlus:
    return "S_plus";
  case BreakClass::SMinus:
    return "S_minus";
  case BreakClass::SZero:
    return "S_zero";
  case BreakClass::Smooth:
    return "Smooth";
  }
  return "?";
}

//==============================================================================
double PolyPiece::value_local(double s) const {
  if (kind == PieceKind::Cosine)
    return std::cos(left + s);
  return poly::eval(coeffs, s);
}

double PolyPiece::slope_local(double s) const {
  if (kind == PieceKind::Cosine)
    return -std::sin(left + s);
  double v = 0.0;
  for (std::size_t m = coeffs.size(); m-- > 1;)
    v = v * s + double(m) * coeffs[m];
  return v;
}

bool PolyPiece::flat() const {
  return kind == PieceKind::Polynomial && poly::degree(coeffs) <= 0;
}

std::vector<double> PolyPiece::critical_points_local() const {
  std::vector<double> out;
  const double tol = 1e-12 * std::max(1.0, width());
  if (kind == PieceKind::Cosine) {
    for (double c : {0.0, pi, two_pi}) {
      const double s = c - left;
      if (s > tol && s < width() - tol)
        out.push_back(s);
    }
    return out;
  }
  if (flat())
    return out;
  for (double r : poly::real_roots(poly::derivative(coeffs), 0.0, width()))
    if (r > tol && r < width() - tol)
      out.push_back(r);
  return out;
}

//==============================================================================
PiecewiseSymbol::PiecewiseSymbol(std::string name,
                                 std::vector<double> breakpoints,
                                 std::vector<poly::Coeffs> coeffs)
    : m_name(std::move(name)) {
  if (breakpoints.empty() || breakpoints.size() != coeffs.size())
    throw InvalidSymbol("breakpoint and piece counts must match and be >= 1");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double x = breakpoints[i];
    if (!std::isfinite(x) || x < 0.0 || x >= two_pi)
      throw InvalidSymbol("breakpoints must lie in [0, 2pi)");
    if (i > 0 && !(x > breakpoints[i - 1]))
      throw InvalidSymbol("breakpoints must be strictly increasing");
  }
  const std::size_t p = breakpoints.size();
  for (std::size_t i = 0; i < p; ++i) {
    auto &c = coeffs[i];
    if (c.empty() || c.size() > std::size_t(max_degree + 1))
      throw InvalidSymbol("piece degree must be between 0 and 12");
    for (double v : c)
      if (!std::isfinite(v))
        throw InvalidSymbol("non-finite coefficient");
    PolyPiece piece;
    piece.left = breakpoints[i];
    piece.right = (i + 1 < p) ? breakpoints[i + 1] : breakpoints[0] + two_pi;
    piece.coeffs = c;
    m_pieces.push_back(std::move(piece));
  }
  bool constant = true;
  for (const auto &pc : m_pieces)
    if (!pc.flat() || pc.coeffs[0] != m_pieces[0].coeffs[0])
      constant = false;
  if (constant)
    throw InvalidSymbol("constant symbols are not admitted");
  finalize();
}

void PiecewiseSymbol::finalize() {
  classify();
  compute_sets();
  compute_segments();
}

PiecewiseSymbol PiecewiseSymbol::cosine() {
  PiecewiseSymbol s;
  s.m_name = "cosine";
  PolyPiece pc;
  pc.left = 0.0;
  pc.right = two_pi;
  pc.kind = PieceKind::Cosine;
  s.m_pieces.push_back(pc);
  s.finalize();
  return s;
}

PiecewiseSymbol PiecewiseSymbol::step(double x1, double x2, double on,
                                      double off, std::string name) {
  x1 = wrap_angle(x1);
  x2 = wrap_angle(x2);
  if (std::abs(wrap_signed(x2 - x1)) < breakpoint_tol)
    throw InvalidSymbol("arc endpoints coincide");
  if (x1 < x2)
    return PiecewiseSymbol(std::move(name), {x1, x2}, {{on}, {off}});
  return PiecewiseSymbol(std::move(name), {x2, x1}, {{off}, {on}});
}

static std::string fmt12(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

PiecewiseSymbol PiecewiseSymbol::indicator(double x1, double x2) {
  return step(x1, x2, 1.0, 0.0, "indicator:" + fmt12(x1) + ":" + fmt12(x2));
}

PiecewiseSymbol PiecewiseSymbol::fig3() {
  return PiecewiseSymbol("fig3", {0.0, 2.0, 4.0},
                         {{0.0, 0.5}, {3.0, 0.5}, {4.0, -2.0 / (two_pi - 4.0)}});
}

PiecewiseSymbol PiecewiseSymbol::builtin(const std::string &name) {
  if (name == "cosine")
    return cosine();
  if (name == "fig3")
    return fig3();
  if (name.rfind("indicator:", 0) == 0) {
    const auto rest = name.substr(10);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw InvalidSymbol("expected indicator:<x1>:<x2>");
    try {
      std::size_t used1 = 0, used2 = 0;
      const auto s1 = rest.substr(0, colon), s2 = rest.substr(colon + 1);
      const double x1 = std::stod(s1, &used1);
      const double x2 = std::stod(s2, &used2);
      if (used1 != s1.size() || used2 != s2.size())
        throw std::invalid_argument("trailing characters");
      auto sym = indicator(x1, x2);
      sym.m_name = name;
      return sym;
    } catch (const std::logic_error &) {
      throw InvalidSymbol("cannot parse " + name);
    }
  }
  throw InvalidSymbol("unknown built-in symbol " + name);
}

PiecewiseSymbol PiecewiseSymbol::from_json(const nlohmann::json &j) {
  try {
    if (!j.contains("pieces")) {
      if (j.contains("name"))
        return builtin(j.at("name").get<std::string>());
      throw InvalidSymbol("symbol JSON needs pieces or a built-in name");
    }
    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<poly::Coeffs> cs;
    for (const auto &pc : j.at("pieces"))
      cs.push_back(pc.at("coeffs").get<poly::Coeffs>());
    return PiecewiseSymbol(j.value("name", std::string("custom")),
                           std::move(bps), std::move(cs));
  } catch (const nlohmann::json::exception &e) {
    throw InvalidSymbol(std::string("malformed symbol JSON: ") + e.what());
  }
}

PiecewiseSymbol PiecewiseSymbol::load(const std::string &source) {
  if (source == "cosine" || source == "fig3" ||
      source.rfind("indicator:", 0) == 0)
    return builtin(source);
  std::ifstream in(source);
  if (!in)
    throw InvalidConfig("cannot open symbol file " + source);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidSymbol(std::string("cannot parse symbol file: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json PiecewiseSymbol::to_json() const {
  nlohmann::json j;
  j["name"] = m_name;
  if (is_cosine())
    return j;
  j["breakpoints"] = breakpoints();
  j["pieces"] = nlohmann::json::array();
  for (const auto &pc : m_pieces)
    j["pieces"].push_back({{"coeffs", pc.coeffs}});
  return j;
}

std::vector<double> PiecewiseSymbol::breakpoints() const {
  std::vector<double> out;
  for (const auto &pc : m_pieces)
    out.push_back(pc.left);
  return out;
}

//==============================================================================
int PiecewiseSymbol::breakpoint_index(double x) const {
  for (std::size_t i = 0; i < m_pieces.size(); ++i)
    if (std::abs(wrap_signed(x - m_pieces[i].left)) <= breakpoint_tol)
      return int(i);
  return -1;
}

int PiecewiseSymbol::locate(double x, double &s) const {
  x = wrap_angle(x);
  const int p = int(m_pieces.size());
  for (int i = p - 1; i >= 0; --i)
    if (m_pieces[std::size_t(i)].left <= x) {
      s = x - m_pieces[std::size_t(i)].left;
      return i;
    }
  s = x + two_pi - m_pieces.back().left;
  return p - 1;
}

double PiecewiseSymbol::eval(double x, Side side) const {
  const int bi = breakpoint_index(x);
  if (bi >= 0) {
    const auto &jb = m_jumps[std::size_t(bi)];
    if (side == Side::Left)
      return jb.left_limit;
    if (side == Side::Right)
      return jb.right_limit;
    if (jb.is_jump())
      throw SideRequired("interior value requested at a jump");
    return jb.right_limit;
  }
  double s = 0.0;
  const int i = locate(x, s);
  return m_pieces[std::size_t(i)].value_local(s);
}

double PiecewiseSymbol::slope(double x, Side side) const {
  const int bi = breakpoint_index(x);
  if (bi >= 0) {
    const auto &jb = m_jumps[std::size_t(bi)];
    if (side == Side::Left)
      return jb.left_slope;
    if (side == Side::Right)
      return jb.right_slope;
    if (jb.cls != BreakClass::Smooth)
      throw SideRequired("interior slope requested at a breakpoint");
    return jb.right_slope;
  }
  double s = 0.0;
  const int i = locate(x, s);
  return m_pieces[std::size_t(i)].slope_local(s);
}

double PiecewiseSymbol::eval_offset(double base, double offset) const {
  const int bi = breakpoint_index(base);
  const int p = int(m_pieces.size());
  if (bi >= 0) {
    if (offset == 0.0)
      return eval(base, Side::Right);
    const auto &right = m_pieces[std::size_t(bi)];
    const auto &left = m_pieces[std::size_t((bi - 1 + p) % p)];
    if (offset > 0.0 && offset < right.width())
      return right.value_local(offset);
    if (offset < 0.0 && -offset < left.width())
      return left.value_local(left.width() + offset);
  }
  const double x = base + offset;
  if (breakpoint_index(x) >= 0)
    return eval(x, offset > 0.0 ? Side::Right : Side::Left);
  return eval(x);
}

std::vector<JumpInfo> PiecewiseSymbol::jumps_of(BreakClass c) const {
  std::vector<JumpInfo> out;
  for (const auto &j : m_jumps)
    if (j.cls == c)
      out.push_back(j);
  return out;
}

const JumpInfo &PiecewiseSymbol::jump_at(double eta) const {
  const int bi = breakpoint_index(eta);
  if (bi < 0)
    throw NotAJump("angle is not a breakpoint");
  return m_jumps[std::size_t(bi)];
}

//==============================================================================
void PiecewiseSymbol::classify() {
  m_jumps.clear();
  const int p = int(m_pieces.size());
  for (int i = 0; i < p; ++i) {
    const auto &lp = m_pieces[std::size_t((i - 1 + p) % p)];
    const auto &rp = m_pieces[std::size_t(i)];
    JumpInfo j;
    j.eta = rp.left;
    j.left_limit = lp.value_local(lp.width());
    j.right_limit = rp.value_local(0.0);
    j.left_slope = lp.slope_local(lp.width());
    j.right_slope = rp.slope_local(0.0);
    const double diff = j.left_limit - j.right_limit;
    if (std::abs(diff) > removable_tol)
      j.cls = diff > 0.0 ? BreakClass::SPlus : BreakClass::SMinus;
    else if (std::abs(j.left_slope - j.right_slope) > removable_tol)
      j.cls = BreakClass::SZero;
    else
      j.cls = BreakClass::Smooth;
    j.jump_interval = {std::min(j.left_limit, j.right_limit),
                       std::max(j.left_limit, j.right_limit)};
    m_jumps.push_back(j);
  }
}

static void push_unique(std::vector<double> &v, double x) {
  for (double y : v)
    if (std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)))
      return;
  v.push_back(x);
}

void PiecewiseSymbol::compute_sets() {
  SpectralSets s;
  double g1 = INFINITY, g2 = -INFINITY;
  for (const auto &pc : m_pieces) {
    if (pc.flat()) {
      push_unique(s.flat_values, pc.coeffs[0]);
      push_unique(s.crit_values, pc.coeffs[0]);
      g1 = std::min(g1, pc.coeffs[0]);
      g2 = std::max(g2, pc.coeffs[0]);
      continue;
    }
    double lo = std::min(pc.value_local(0.0), pc.value_local(pc.width()));
    double hi = std::max(pc.value_local(0.0), pc.value_local(pc.width()));
    for (double c : pc.critical_points_local()) {
      const double v = pc.value_local(c);
      push_unique(s.crit_values, v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    s.sigma_omega.add({lo, hi});
    g1 = std::min(g1, lo);
    g2 = std::max(g2, hi);
  }
  for (const auto &j : m_jumps) {
    if (j.cls == BreakClass::Smooth) {
      if (std::abs(j.right_slope) < removable_tol)
        push_unique(s.crit_values, j.right_limit);
      continue;
    }
    push_unique(s.thresholds, j.left_limit);
    push_unique(s.thresholds, j.right_limit);
    if (j.is_jump())
      s.upsilon.add(j.jump_interval);
  }
  s.gamma1 = g1;
  s.gamma2 = g2;
  for (double v : s.crit_values)
    push_unique(s.exceptional, v);
  for (double v : s.thresholds)
    push_unique(s.exceptional, v);
  std::sort(s.crit_values.begin(), s.crit_values.end());
  std::sort(s.thresholds.begin(), s.thresholds.end());
  std::sort(s.exceptional.begin(), s.exceptional.end());
  std::sort(s.flat_values.begin(), s.flat_values.end());
  m_sets = std::move(s);
}

namespace {
struct RawSegment {
  int piece;
  double a, b;
  int dir;
};
} // namespace

void PiecewiseSymbol::compute_segments() {
  std::vector<RawSegment> raw;
  for (int i = 0; i < int(m_pieces.size()); ++i) {
    const auto &pc = m_pieces[std::size_t(i)];
    std::vector<double> cuts{0.0};
    for (double c : pc.critical_points_local())
      cuts.push_back(c);
    cuts.push_back(pc.width());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      int dir = 0;
      if (!pc.flat()) {
        const double d = pc.slope_local(0.5 * (a + b));
        if (d != 0.0)
          dir = d > 0.0 ? 1 : -1;
        else
          dir = pc.value_local(b) > pc.value_local(a) ? 1 : -1;
      }
      raw.push_back({i, a, b, dir});
    }
  }
  const int nr = int(raw.size());
  // joint k sits between raw[k] and raw[k+1]
  auto mergeable = [&](int k) {
    const auto &r0 = raw[std::size_t(k)];
    const auto &r1 = raw[std::size_t((k + 1) % nr)];
    if (r0.dir == 0 || r0.dir != r1.dir)
      return false;
    if (r1.a != 0.0)
      return false;
    const auto &j = m_jumps[std::size_t(r1.piece)];
    return j.cls == BreakClass::Smooth && std::abs(j.right_slope) > removable_tol;
  };
  int start = 0;
  for (int k = 0; k < nr; ++k)
    if (!mergeable((k - 1 + nr) % nr)) {
      start = k;
      break;
    }
  m_segments.clear();
  double unwrap = 0.0;
  double prev_end = -INFINITY;
  for (int t = 0; t < nr; ++t) {
    const int k = (start + t) % nr;
    const auto &r = raw[std::size_t(k)];
    const auto &pc = m_pieces[std::size_t(r.piece)];
    double shift = pc.left + unwrap;
    if (shift + r.a < prev_end - 1e-9) {
      unwrap += two_pi;
      shift += two_pi;
    }
    SegmentPart part{r.piece, r.a, r.b, shift};
    prev_end = shift + r.b;
    const bool join = t > 0 && mergeable((k - 1 + nr) % nr);
    if (join) {
      auto &seg = m_segments.back();
      seg.parts.push_back(part);
      seg.right = shift + r.b;
      seg.v_right = pc.value_local(r.b);
    } else {
      MonotoneSegment seg;
      seg.left = shift + r.a;
      seg.right = shift + r.b;
      seg.direction = r.dir;
      seg.v_left = pc.value_local(r.a);
      seg.v_right = pc.value_local(r.b);
      seg.parts.push_back(part);
      m_segments.push_back(std::move(seg));
    }
  }
}

double PiecewiseSymbol::solve_level(const MonotoneSegment &seg,
                                    double y) const {
  if (y <= std::min(seg.v_left, seg.v_right))
    return seg.v_left <= seg.v_right ? seg.left : seg.right;
  if (y >= std::max(seg.v_left, seg.v_right))
    return seg.v_left >= seg.v_right ? seg.left : seg.right;
  for (const auto &part : seg.parts) {
    const auto &pc = m_pieces[std::size_t(part.piece)];
    double a = part.a, b = part.b;
    double fa = pc.value_local(a) - y, fb = pc.value_local(b) - y;
    if (fa == 0.0)
      return part.shift + a;
    if (fb == 0.0)
      return part.shift + b;
    if ((fa > 0.0) == (fb > 0.0))
      continue;
    double s = 0.5 * (a + b);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
      const double fs = pc.value_local(s) - y;
      if (fs == 0.0)
        break;
      if ((fs > 0.0) == (fa > 0.0)) {
        a = s;
        fa = fs;
      } else {
        b = s;
      }
      const double d = pc.slope_local(s);
      double next = d != 0.0 ? s - fs / d : 0.5 * (a + b);
      if (!(next > a && next < b))
        next = 0.5 * (a + b);
      s = next;
    }
    return part.shift + s;
  }
  throw DomainError("level value outside the segment range");
}

//==============================================================================
// J_m = int_0^W s^m e^{-ins} ds, m = 0..D
static std::vector<cd> moment_integrals(int n, double W, int D) {
  std::vector<cd> J(std::size_t(D + 1));
  if (n == 0) {
    for (int m = 0; m <= D; ++m)
      J[std::size_t(m)] = std::pow(W, m + 1) / double(m + 1);
    return J;
  }
  const double nW = std::abs(double(n)) * W;
  if (nW > double(D)) {
    const cd in(0.0, double(n));
    const cd e = std::exp(-in * W);
    J[0] = (1.0 - e) / in;
    double Wm = 1.0;
    for (int m = 1; m <= D; ++m) {
      Wm *= W;
      J[std::size_t(m)] = (Wm * e - double(m) * J[std::size_t(m - 1)]) / (-in);
    }
    return J;
  }
  // series in (-i n W)^k / k! for small n W
  for (int m = 0; m <= D; ++m) {
    cd sum = 0.0;
    cd term = 1.0;
    const cd step(0.0, -double(n) * W);
    for (int k = 0; k < 400; ++k) {
      if (k > 0)
        term *= step / double(k);
      const cd add = term / double(m + k + 1);
      sum += add;
      if (k > nW + 2 && std::abs(add) < 1e-18 * std::abs(sum))
        break;
    }
    J[std::size_t(m)] = std::pow(W, m + 1) * sum;
  }
  return J;
}

std::complex<double> PiecewiseSymbol::coefficient(int n) const {
  if (is_cosine())
    return (n == 1 || n == -1) ? cd(0.5, 0.0) : cd(0.0, 0.0);
  if (n < 0)
    return std::conj(coefficient(-n));
  cd total = 0.0;
  for (const auto &pc : m_pieces) {
    const int D = int(pc.coeffs.size()) - 1;
    const auto J = moment_integrals(n, pc.width(), D);
    cd acc = 0.0;
    for (int m = 0; m <= D; ++m)
      acc += pc.coeffs[std::size_t(m)] * J[std::size_t(m)];
    total += std::exp(cd(0.0, -double(n) * pc.left)) * acc;
  }
  total /= two_pi;
  if (n == 0)
    total.imag(0.0);
  return total;
}

std::vector<std::complex<double>> PiecewiseSymbol::coefficient_range(int K) const {
  std::vector<cd> out(std::size_t(2 * K + 1));
  for (int n = 0; n <= K; ++n) {
    const cd c = coefficient(n);
    out[std::size_t(K + n)] = c;
    out[std::size_t(K - n)] = std::conj(c);
  }
  return out;
}

FourierCoeffs PiecewiseSymbol::fourier_coeffs(int M) const {
  if (M < 1)
    throw InvalidConfig("mode cutoff must be >= 1");
  return FourierCoeffs{M, coefficient_range(2 * M)};
}

FourierCoeffs constant_coeffs(double c, int M) {
  FourierCoeffs f{M, std::vector<cd>(std::size_t(4 * M + 1), 0.0)};
  f.c[std::size_t(2 * M)] = c;
  return f;
}

PiecewiseSymbol PiecewiseSymbol::reflect() const {
  if (is_cosine())
    return cosine();
  std::vector<std::pair<double, poly::Coeffs>> pcs;
  for (const auto &pc : m_pieces)
    pcs.emplace_back(wrap_angle(-pc.right),
                     poly::recenter(pc.coeffs, pc.width(), -1.0));
  std::sort(pcs.begin(), pcs.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::vector<double> bps;
  std::vector<poly::Coeffs> cs;
  for (auto &[x, c] : pcs) {
    bps.push_back(x);
    cs.push_back(std::move(c));
  }
  return PiecewiseSymbol("reflect(" + m_name + ")", std::move(bps),
                         std::move(cs));
}

//==============================================================================
PiecewiseSymbol random_symbol(std::mt19937_64 &rng, int max_pieces,
                              int max_degree) {
  std::uniform_int_distribution<int> npieces(1, max_pieces);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    const int p = npieces(rng);
    std::vector<double> bps;
    for (int i = 0; i < p; ++i)
      bps.push_back(angle(rng));
    std::sort(bps.begin(), bps.end());
    bool spaced = true;
    for (int i = 0; i < p; ++i) {
      const double next = (i + 1 < p) ? bps[std::size_t(i + 1)]
                                      : bps[0] + two_pi;
      if (next - bps[std::size_t(i)] < 0.2)
        spaced = false;
    }
    if (!spaced)
      continue;
    std::vector<poly::Coeffs> cs;
    for (int i = 0; i < p; ++i) {
      const double width =
          ((i + 1 < p) ? bps[std::size_t(i + 1)] : bps[0] + two_pi) -
          bps[std::size_t(i)];
      const int d = deg(rng);
      poly::Coeffs c(std::size_t(d + 1));
      for (int m = 0; m <= d; ++m)
        c[std::size_t(m)] = 2.0 * unit(rng) / std::pow(width, m);
      cs.push_back(std::move(c));
    }
    try {
      return PiecewiseSymbol("random", bps, cs);
    } catch (const InvalidSymbol &) {
      continue;
    }
  }
}

} // namespace toescat

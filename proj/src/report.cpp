#include "toescat/report.hpp"
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace toescat::report {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x))
    return "NaN";
  if (std::isinf(x))
    return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

namespace {

void emit(std::ostringstream &os, const json &j, int indent, int level) {
  const std::string pad(std::size_t(indent * (level + 1)), ' ');
  const std::string end_pad(std::size_t(indent * level), ' ');
  const char *nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
  case json::value_t::object: {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{" << nl;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first)
        os << "," << nl;
      first = false;
      os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
      emit(os, it.value(), indent, level + 1);
    }
    os << nl << end_pad << "}";
    return;
  }
  case json::value_t::array: {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << "[" << nl;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i)
        os << "," << nl;
      os << pad;
      emit(os, j[i], indent, level + 1);
    }
    os << nl << end_pad << "]";
    return;
  }
  case json::value_t::number_float: {
    const double x = j.get<double>();
    // non-finite values have no JSON literal
    if (std::isfinite(x))
      os << format_double(x);
    else
      os << json(format_double(x)).dump();
    return;
  }
  default:
    os << j.dump();
  }
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace

std::string dump(const json &j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  return os.str();
}

std::string config_hash(const json &config) {
  const std::string text = dump(config, 0);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return hex64(h);
}

json envelope(const std::string &command, const json &config, json result) {
  return {{"command", command},
          {"module_version", module_version},
          {"config", config},
          {"config_hash", config_hash(config)},
          {"result", std::move(result)}};
}

json error_json(const std::string &kind, const std::string &message,
                int exit_code) {
  return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", exit_code}}},
          {"module_version", module_version}};
}

//==============================================================================
json to_json(const Interval &i) { return json::array({i.lo, i.hi}); }

json to_json(const IntervalSet &s) {
  json a = json::array();
  for (const auto &p : s.parts())
    a.push_back(to_json(p));
  return a;
}

json to_json(const MultiplicityReport &r) {
  return {{"n_plus", r.n_plus},        {"n_minus", r.n_minus},
          {"s_plus", r.s_plus},        {"s_minus", r.s_minus},
          {"m", r.m},                  {"jumps_plus", r.jumps_plus},
          {"jumps_minus", r.jumps_minus}};
}

json to_json(const SpectrumPartition &p) {
  json probes = json::array();
  for (const auto &pr : p.probes)
    probes.push_back({{"interval", to_json(pr.interval)},
                      {"multiplicity", to_json(pr.report)}});
  return {{"spectrum", to_json(p.gamma)},
          {"sigma_omega", to_json(p.sigma_omega)},
          {"upsilon", to_json(p.upsilon)},
          {"flat_values", p.flat_values},
          {"exceptional", p.exceptional},
          {"thin", to_json(p.thin)},
          {"thick", to_json(p.thick)},
          {"mixed", to_json(p.mixed)},
          {"probes", probes}};
}

json to_json(const CountingReport &r) {
  return {{"n", r.n},         {"a", r.a},         {"b", r.b},
          {"count", r.count}, {"ratio", r.ratio}, {"limit", r.limit},
          {"deviation", r.deviation}};
}

json to_json(const ConcentrationProfile &c) {
  return {{"t", c.t},
          {"near_zeta1", c.near1},
          {"near_zeta2", c.near2},
          {"elsewhere", c.elsewhere},
          {"total", c.total}};
}

json to_json(const ChannelDecomposition &d) {
  json ch = json::array();
  for (const auto &c : d.channels) {
    json e = {{"kind", c.kind}, {"mass", c.mass}, {"vectors", c.vectors}};
    if (c.kind == "jump")
      e["eta"] = c.eta;
    else
      e["arc"] = json::array({c.arc.alpha, c.arc.beta});
    ch.push_back(e);
  }
  json j = {{"band", to_json(d.band)},
            {"sign", d.sign},
            {"multiplicity", d.multiplicity},
            {"frame_count", d.frame_count},
            {"channels", ch},
            {"defect", d.defect},
            {"t_star", d.t_star}};
  if (d.cauchy >= 0.0)
    j["cauchy"] = d.cauchy;
  return j;
}

json to_json(const TwoSidedReport &r) {
  return {{"forward", to_json(r.forward)},
          {"backward", to_json(r.backward)},
          {"dominant_forward", r.dominant_forward},
          {"dominant_backward", r.dominant_backward}};
}

json to_json(const CookReport &r) {
  return {{"t", r.t},
          {"g", r.g},
          {"integral", r.integral},
          {"tail_exponent", r.tail_exponent}};
}

json to_json(const WaveApprox &w) {
  return {{"pair", w.pair == WaveApprox::Pair::Thick ? "thick" : "jump"},
          {"sign", w.sign},
          {"t", w.t_list},
          {"norms", w.norms},
          {"f_norm", w.f_norm},
          {"cauchy", w.cauchy}};
}

//==============================================================================
std::string counting_csv(const std::vector<CountingReport> &rows,
                         const std::string &hash) {
  std::ostringstream os;
  os << "# config_hash=" << hash << " module_version=" << module_version << "\n";
  os << "n,a,b,count,ratio,limit,deviation\n";
  for (const auto &r : rows)
    os << r.n << "," << format_double(r.a) << "," << format_double(r.b) << ","
       << r.count << "," << format_double(r.ratio) << ","
       << format_double(r.limit) << "," << format_double(r.deviation) << "\n";
  return os.str();
}

json to_json(const HankelBlock &h) {
  return {{"n", h.n},
          {"sigma_1", h.singular_values.size() ? h.singular_values(0) : 0.0},
          {"numerical_rank", numerical_rank(h)},
          {"decay_exponent", decay_exponent(h)},
          {"decay_exponent_kind", "heuristic"}};
}

std::string hankel_csv(const HankelBlock &h, const std::string &hash) {
  std::ostringstream os;
  os << "# config_hash=" << hash << " module_version=" << module_version << "\n";
  os << "k,sigma_k\n";
  for (Eigen::Index k = 0; k < h.singular_values.size(); ++k)
    os << k + 1 << "," << format_double(h.singular_values(k)) << "\n";
  return os.str();
}

std::string concentration_csv(const std::vector<ConcentrationProfile> &rows,
                              const std::string &hash) {
  std::ostringstream os;
  os << "# config_hash=" << hash << " module_version=" << module_version << "\n";
  os << "t,near_zeta1,near_zeta2,elsewhere,total\n";
  for (const auto &c : rows)
    os << format_double(c.t) << "," << format_double(c.near1) << ","
       << format_double(c.near2) << "," << format_double(c.elsewhere) << ","
       << format_double(c.total) << "\n";
  return os.str();
}

//==============================================================================
namespace {

constexpr double W = 720, H = 420, left = 60, top = 30, plot_w = 520,
                 plot_h = 340, band_x = 610, band_w = 40;

std::string num(double x) { return format_double(x); }

std::string svg_open(const std::string &hash) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W)
     << "\" height=\"" << num(H) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<!-- config_hash=" << hash << " module_version=" << module_version
     << " -->\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H)
     << "\" fill=\"white\"/>\n";
  return os.str();
}

} // namespace

std::string partition_svg(const PiecewiseSymbol &symbol,
                          const SpectrumPartition &partition,
                          const std::string &hash) {
  double vlo = partition.gamma.lo, vhi = partition.gamma.hi;
  if (vhi - vlo < 1e-12) {
    vlo -= 0.5;
    vhi += 0.5;
  }
  const double pad = 0.05 * (vhi - vlo);
  vlo -= pad;
  vhi += pad;
  auto X = [](double x) { return left + plot_w * x / two_pi; };
  auto Y = [&](double v) { return top + plot_h * (vhi - v) / (vhi - vlo); };

  std::ostringstream os;
  os << svg_open(hash);
  os << "<text x=\"" << num(left) << "\" y=\"18\">" << symbol.name()
     << ": symbol and spectral bands</text>\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
     << num(plot_w) << "\" height=\"" << num(plot_h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  std::vector<double> cuts = symbol.breakpoints();
  cuts.push_back(0.0);
  cuts.push_back(two_pi);
  for (auto &c : cuts)
    c = c >= two_pi ? two_pi : wrap_angle(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    const int n = 200;
    for (int k = 0; k <= n; ++k) {
      const double x = a + (b - a) * (k == 0 ? 1e-9 : k == n ? 1 - 1e-9 : double(k) / n);
      os << num(X(x)) << "," << num(Y(symbol.eval(x, Side::Right))) << " ";
    }
    os << "\"/>\n";
  }

  auto bands = [&](const IntervalSet &s, const char *color, const char *label) {
    for (const auto &p : s.parts()) {
      const double y1 = Y(p.hi), y2 = Y(p.lo);
      os << "<rect x=\"" << num(band_x) << "\" y=\"" << num(y1) << "\" width=\""
         << num(band_w) << "\" height=\"" << num(std::max(y2 - y1, 1.0))
         << "\" fill=\"" << color << "\" opacity=\"0.8\"><title>" << label
         << "</title></rect>\n";
      os << "<rect x=\"" << num(left) << "\" y=\"" << num(y1) << "\" width=\""
         << num(plot_w) << "\" height=\"" << num(std::max(y2 - y1, 1.0))
         << "\" fill=\"" << color << "\" opacity=\"0.12\"/>\n";
    }
  };
  bands(partition.thin, "#3b6fd6", "thin");
  bands(partition.thick, "#e08a1e", "thick");
  bands(partition.mixed, "#3aa655", "mixed");

  const char *labels[] = {"thin", "thick", "mixed"};
  const char *colors[] = {"#3b6fd6", "#e08a1e", "#3aa655"};
  for (int i = 0; i < 3; ++i) {
    const double y = top + 14.0 * i;
    os << "<rect x=\"" << num(band_x + band_w + 8) << "\" y=\"" << num(y)
       << "\" width=\"10\" height=\"10\" fill=\"" << colors[i] << "\"/>\n";
    os << "<text x=\"" << num(band_x + band_w + 22) << "\" y=\"" << num(y + 9)
       << "\">" << labels[i] << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = vlo + pad + (vhi - vlo - 2 * pad) * k / 4.0;
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(Y(v) + 4)
       << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  os << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(H - 20)
     << "\" text-anchor=\"middle\">angle in [0, 2pi)</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string series_svg(const std::string &title, const std::vector<double> &x,
                       const std::vector<std::vector<double>> &ys,
                       const std::vector<std::string> &labels, bool log_y,
                       const std::string &hash) {
  auto tr = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
  double xlo = x.empty() ? 0 : x.front(), xhi = x.empty() ? 1 : x.back();
  double ylo = INFINITY, yhi = -INFINITY;
  for (const auto &y : ys)
    for (double v : y) {
      ylo = std::min(ylo, tr(v));
      yhi = std::max(yhi, tr(v));
    }
  if (!(yhi > ylo)) {
    ylo = (std::isfinite(ylo) ? ylo : 0.0) - 1.0;
    yhi = ylo + 2.0;
  }
  if (!(xhi > xlo))
    xhi = xlo + 1.0;
  auto X = [&](double v) { return left + plot_w * (v - xlo) / (xhi - xlo); };
  auto Y = [&](double v) { return top + plot_h * (yhi - tr(v)) / (yhi - ylo); };
  const char *colors[] = {"#3b6fd6", "#e08a1e", "#3aa655", "#c0392b", "#7d3c98"};

  std::ostringstream os;
  os << svg_open(hash);
  os << "<text x=\"" << num(left) << "\" y=\"18\">" << title << "</text>\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
     << num(plot_w) << "\" height=\"" << num(plot_h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t s = 0; s < ys.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[s % 5]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < ys[s].size(); ++i)
      os << num(X(x[i])) << "," << num(Y(ys[s][i])) << " ";
    os << "\"/>\n";
    if (s < labels.size())
      os << "<text x=\"" << num(band_x) << "\" y=\"" << num(top + 14.0 * double(s) + 9)
         << "\" fill=\"" << colors[s % 5] << "\">" << labels[s] << "</text>\n";
  }
  os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + 4)
     << "\" text-anchor=\"end\">" << num(log_y ? std::pow(10.0, yhi) : yhi)
     << "</text>\n";
  os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + plot_h)
     << "\" text-anchor=\"end\">" << num(log_y ? std::pow(10.0, ylo) : ylo)
     << "</text>\n";
  os << "<text x=\"" << num(left) << "\" y=\"" << num(top + plot_h + 16) << "\">"
     << num(xlo) << "</text>\n";
  os << "<text x=\"" << num(left + plot_w) << "\" y=\"" << num(top + plot_h + 16)
     << "\" text-anchor=\"end\">" << num(xhi) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

} // namespace toescat::report

#include "toescat/cli.hpp"
#include "toescat/classifier.hpp"
#include "toescat/errors.hpp"
#include "toescat/report.hpp"
#include "toescat/scattering.hpp"
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace toescat::cli {

using nlohmann::json;

namespace {

constexpr int max_modes = 1024;
constexpr int max_trunc = 4096;
constexpr double max_time = 200.0;

Interval require_band(const RunConfig &cfg) {
  if (!cfg.band)
    throw InvalidConfig("command '" + cfg.command + "' needs --band LO:HI");
  return {cfg.band->first, cfg.band->second};
}

std::vector<double> time_grid(double t_star, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i)
    t.push_back(-t_star + 2.0 * t_star * i / (n - 1));
  return t;
}

//! Model channel for `evolve`: a two-valued symbol is its own channel,
//! otherwise the model of the first jump.
IndicatorChannel evolve_channel(const PiecewiseSymbol &sym) {
  std::vector<const JumpInfo *> jumps;
  for (const auto &j : sym.jumps())
    if (j.is_jump())
      jumps.push_back(&j);
  if (jumps.empty())
    throw NotAJump("symbol has no jump to carry a model channel");
  bool two_valued = jumps.size() == 2 && sym.pieces().size() == 2;
  for (const auto &p : sym.pieces())
    two_valued = two_valued && p.kind == PieceKind::Polynomial &&
                 poly::degree(p.coeffs) <= 0;
  if (two_valued) {
    const auto &p0 = sym.pieces()[0], &p1 = sym.pieces()[1];
    return IndicatorChannel(p0.left, p0.right, p1.value_local(0.0),
                            p0.value_local(0.0));
  }
  return jump_model(sym, jumps.front()->eta).channel;
}

std::vector<ConcentrationProfile> concentration_series(const RunConfig &cfg,
                                                       const PiecewiseSymbol &sym) {
  const auto channel = evolve_channel(sym);
  const BumpProfile bump(cfg.bump.first, cfg.bump.second);
  std::vector<ConcentrationProfile> rows;
  for (double t : time_grid(cfg.t_star, 9))
    rows.push_back(concentration_profile(channel, bump, t, cfg.eps));
  return rows;
}

std::string hash_of(const RunConfig &cfg) {
  return report::config_hash(cfg.to_json());
}

} // namespace

//==============================================================================
void RunConfig::validate() const {
  static const std::vector<std::string> commands{"classify", "szego",   "evolve",
                                                 "channels", "complete", "plot"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw InvalidConfig("unknown command '" + command + "'");
  if (modes < 8 || modes > max_modes)
    throw InvalidConfig("--modes must lie in [8, 1024]");
  if (trunc < 1 || trunc > max_trunc)
    throw InvalidConfig("--trunc must lie in [1, 4096]");
  if (grid < 2 * (modes + 1) || (grid & (grid - 1)) != 0)
    throw InvalidConfig("--grid must be a power of two >= 2(M+1)");
  if (!(std::abs(t_star) <= max_time) || !(t_star > 0.0))
    throw InvalidConfig("--tstar must lie in (0, 200]");
  if (!(eps > 0.0 && eps < pi))
    throw InvalidConfig("--eps must lie in (0, pi)");
  if (!(bump.first > 0.0 && bump.second < 1.0 && bump.first < bump.second))
    throw InvalidConfig("--bump must satisfy 0 < LO < HI < 1");
  if (band && !(band->first < band->second))
    throw InvalidConfig("--band must satisfy LO < HI");
}

json RunConfig::to_json() const {
  json j = {{"command", command}, {"symbol", symbol}, {"modes", modes},
            {"grid", grid},       {"trunc", trunc},   {"t_star", t_star},
            {"eps", eps},         {"bump", json::array({bump.first, bump.second})},
            {"seed", seed}};
  j["band"] = band ? json::array({band->first, band->second}) : json(nullptr);
  return j;
}

std::pair<double, double> parse_range(const std::string &text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos)
    throw InvalidConfig("range '" + text + "' is not of the form LO:HI");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double lo = std::stod(a, &p1), hi = std::stod(b, &p2);
    if (p1 != a.size() || p2 != b.size())
      throw std::invalid_argument("trailing characters");
    return {lo, hi};
  } catch (const std::logic_error &) {
    throw InvalidConfig("range '" + text + "' is not of the form LO:HI");
  }
}

//==============================================================================
CommandOutput cmd_classify(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  const auto part = partition_spectrum(sym);
  CommandOutput out;
  out.report = {{"symbol", sym.to_json()}, {"partition", report::to_json(part)}};
  out.files.push_back({"partition.svg", report::partition_svg(sym, part, hash_of(cfg))});
  return out;
}

CommandOutput cmd_szego(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  const auto band = require_band(cfg);
  std::vector<int> ns;
  for (int n : {256, 512, 1024, 2048})
    if (n <= cfg.trunc)
      ns.push_back(n);
  if (ns.empty() || ns.back() != cfg.trunc)
    ns.push_back(cfg.trunc);
  std::vector<CountingReport> rows;
  json arr = json::array();
  for (int n : ns) {
    rows.push_back(counting_report(sym, n, band.lo, band.hi));
    arr.push_back(report::to_json(rows.back()));
  }
  const auto hankel = hankel_block(sym, std::max(8, std::min(cfg.trunc, 512)));
  CommandOutput out;
  out.report = {{"rows", arr}, {"hankel", report::to_json(hankel)}};
  out.files.push_back({"szego.csv", report::counting_csv(rows, hash_of(cfg))});
  out.files.push_back({"hankel.csv", report::hankel_csv(hankel, hash_of(cfg))});
  return out;
}

CommandOutput cmd_evolve(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  const auto channel = evolve_channel(sym);
  const auto rows = concentration_series(cfg, sym);
  json arr = json::array();
  for (const auto &r : rows)
    arr.push_back(report::to_json(r));
  CommandOutput out;
  out.report = {{"channel",
                 {{"zeta1", channel.zeta1},
                  {"zeta2", channel.zeta2},
                  {"alpha_off", channel.alpha_lo},
                  {"alpha_on", channel.alpha_hi}}},
                {"profiles", arr}};
  out.files.push_back({"evolve.csv", report::concentration_csv(rows, hash_of(cfg))});
  return out;
}

CommandOutput cmd_channels(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  json jumps = json::array();
  for (const auto &j : sym.jumps()) {
    if (!j.is_jump())
      continue;
    const auto m = jump_model(sym, j.eta);
    jumps.push_back({{"eta", j.eta},
                     {"class", to_string(j.cls)},
                     {"left_limit", j.left_limit},
                     {"right_limit", j.right_limit},
                     {"model_arc", json::array({m.channel.zeta1, m.channel.zeta2})},
                     {"alpha_near", m.alpha_near()},
                     {"alpha_far", m.alpha_far()}});
  }
  CommandOutput out;
  out.report = {{"jumps", jumps}};
  if (!cfg.band)
    return out;

  const auto band = require_band(cfg);
  const auto mult = multiplicity(sym, band.lo, band.hi);
  const auto arcs = preimage_arcs(sym, band.lo, band.hi);
  out.report["band"] = report::to_json(band);
  out.report["multiplicity"] = report::to_json(mult);

  const DiscreteSpaces spaces(cfg.modes, cfg.grid);
  const auto T = TruncatedToeplitz::build(sym, cfg.modes + 1);
  const std::vector<double> ts{0.5 * cfg.t_star, 0.75 * cfg.t_star, cfg.t_star};
  json thick = json::array();
  for (int sign : {1, -1})
    for (const auto &arc : sign > 0 ? arcs.plus : arcs.minus) {
      Eigen::VectorXcd f(spaces.N());
      for (int j = 0; j < spaces.N(); ++j) {
        double x = spaces.angle(j);
        if (x < arc.alpha)
          x += two_pi;
        const double u = (2.0 * x - arc.alpha - arc.beta) / arc.length();
        f(j) = std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
      }
      const auto w = wave_approx_thick(sym, spaces, T, f, sign, ts);
      thick.push_back({{"sign", sign},
                       {"arc", json::array({arc.alpha, arc.beta})},
                       {"cauchy", w.relative_cauchy()},
                       {"isometry", w.norms.back() / w.f_norm}});
    }
  json cook = json::array();
  const BumpProfile bump(cfg.bump.first, cfg.bump.second);
  for (double eta : mult.jumps_plus)
    cook.push_back({{"eta", eta},
                    {"report", report::to_json(cook_diagnostic(
                                   sym, jump_model(sym, eta),
                                   SpectralDensity::of(bump), cfg.t_star))}});
  for (double eta : mult.jumps_minus)
    cook.push_back({{"eta", eta},
                    {"report", report::to_json(cook_diagnostic(
                                   sym, jump_model(sym, eta),
                                   SpectralDensity::of(bump), cfg.t_star))}});
  out.report["thick"] = thick;
  out.report["cook"] = cook;
  return out;
}

CommandOutput cmd_complete(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  const auto band = require_band(cfg);
  WorkspaceConfig wc;
  wc.M = cfg.modes;
  wc.t_reach = cfg.t_star;
  const ChannelWorkspace ws(sym, wc);
  CompletenessConfig cc;
  cc.t_star = cfg.t_star;
  cc.seed = cfg.seed;
  cc.with_cauchy = true;
  const auto r = two_sided_report(ws, band, cc);
  CommandOutput out;
  out.report = report::to_json(r);
  out.report["forward"]["M"] = cfg.modes;
  out.report["backward"]["M"] = cfg.modes;
  return out;
}

CommandOutput cmd_plot(const RunConfig &cfg) {
  const auto sym = PiecewiseSymbol::load(cfg.symbol);
  const auto hash = hash_of(cfg);
  CommandOutput out;
  out.files.push_back(
      {"partition.svg", report::partition_svg(sym, partition_spectrum(sym), hash)});
  json files = json::array({"partition.svg"});
  bool has_jump = false;
  for (const auto &j : sym.jumps())
    has_jump = has_jump || j.is_jump();
  if (has_jump) {
    const auto rows = concentration_series(cfg, sym);
    std::vector<double> t;
    std::vector<std::vector<double>> ys(3);
    for (const auto &r : rows) {
      t.push_back(r.t);
      ys[0].push_back(r.near1);
      ys[1].push_back(r.near2);
      ys[2].push_back(r.elsewhere);
    }
    out.files.push_back({"concentration.svg",
                         report::series_svg("model channel masses against t", t, ys,
                                            {"near zeta1", "near zeta2", "elsewhere"},
                                            false, hash)});
    files.push_back("concentration.svg");
  }
  out.report = {{"files", files}};
  return out;
}

CommandOutput run(const RunConfig &cfg) {
  cfg.validate();
  if (cfg.command == "classify")
    return cmd_classify(cfg);
  if (cfg.command == "szego")
    return cmd_szego(cfg);
  if (cfg.command == "evolve")
    return cmd_evolve(cfg);
  if (cfg.command == "channels")
    return cmd_channels(cfg);
  if (cfg.command == "complete")
    return cmd_complete(cfg);
  return cmd_plot(cfg);
}

int execute(const RunConfig &cfg) {
  auto fail = [](const std::string &kind, const std::string &msg, int code) {
    std::cout << report::dump(report::error_json(kind, msg, code)) << "\n";
    return code;
  };
  try {
    auto out = run(cfg);
    const auto env = report::envelope(cfg.command, cfg.to_json(), out.report);
    const std::string text = report::dump(env) + "\n";
    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      out.files.insert(out.files.begin(), {cfg.command + ".json", text});
      for (const auto &[name, body] : out.files) {
        std::ofstream f(std::filesystem::path(cfg.out_dir) / name);
        if (!f)
          throw InvalidConfig("cannot write to " + cfg.out_dir);
        f << body;
      }
    }
    std::cout << text;
    return 0;
  } catch (const Error &e) {
    return fail(to_string(e.kind()), e.what(), e.numerical() ? 3 : 2);
  } catch (const std::filesystem::filesystem_error &e) {
    return fail("InvalidConfig", e.what(), 2);
  } catch (const nlohmann::json::exception &e) {
    return fail("InvalidConfig", e.what(), 2);
  } catch (const std::exception &e) {
    return fail("NumericalFailure", e.what(), 3);
  }
}

} // namespace toescat::cli

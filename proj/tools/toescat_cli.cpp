//! Command-line front end: toescat <command> [options].
#include "toescat/cli.hpp"
#include "toescat/errors.hpp"
#include "toescat/report.hpp"
#include <CLI11.hpp>
#include <iostream>

int main(int argc, char **argv) {
  using namespace toescat;
  cli::RunConfig cfg;
  std::string band, bump;

  CLI::App app{"Toeplitz scattering probes for piecewise symbols"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"classify", "spectral partition JSON and band diagram"},
      {"szego", "eigenvalue counting sweep over the truncation size"},
      {"evolve", "model-channel concentration profile over time"},
      {"channels", "channel list with thick Cauchy and jump Cook diagnostics"},
      {"complete", "two-sided channel masses and completeness defect"},
      {"plot", "SVG diagrams"}};
  for (const auto &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("--symbol", cfg.symbol, "built-in name or JSON path");
    sub->add_option("--band", band, "spectral band LO:HI");
    sub->add_option("--modes", cfg.modes, "Hardy mode cutoff M");
    sub->add_option("--grid", cfg.grid, "circle grid size N");
    sub->add_option("--trunc", cfg.trunc, "Toeplitz truncation n");
    sub->add_option("--tstar", cfg.t_star, "probe time");
    sub->add_option("--eps", cfg.eps, "endpoint neighbourhood radius");
    sub->add_option("--bump", bump, "spectral bump support LO:HI in (0, 1)");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--seed", cfg.seed, "seed of the random test state");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cout << report::dump(report::error_json("InvalidConfig", e.what(), 2))
              << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!band.empty())
      cfg.band = cli::parse_range(band);
    if (!bump.empty())
      cfg.bump = cli::parse_range(bump);
  } catch (const Error &e) {
    std::cout << report::dump(report::error_json("InvalidConfig", e.what(), 2))
              << "\n";
    return 2;
  }
  return cli::execute(cfg);
}

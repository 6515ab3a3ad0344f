#pragma once
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toescat::cli {

struct RunConfig {
  std::string command;
  std::string symbol{"fig3"};
  std::optional<std::pair<double, double>> band{};
  int modes{256};
  int grid{2048};
  int trunc{2048};
  double t_star{80.0};
  double eps{0.1};
  std::pair<double, double> bump{0.3, 0.7};
  std::string out_dir{};
  unsigned seed{7};

  //! Throws InvalidConfig when a knob is out of range.
  void validate() const;
  nlohmann::json to_json() const;
};

//! Parses "LO:HI".
std::pair<double, double> parse_range(const std::string &text);

//! A command's JSON report plus the named text files it emits.
struct CommandOutput {
  nlohmann::json report;
  std::vector<std::pair<std::string, std::string>> files{};
};

CommandOutput cmd_classify(const RunConfig &cfg);
CommandOutput cmd_szego(const RunConfig &cfg);
CommandOutput cmd_evolve(const RunConfig &cfg);
CommandOutput cmd_channels(const RunConfig &cfg);
CommandOutput cmd_complete(const RunConfig &cfg);
CommandOutput cmd_plot(const RunConfig &cfg);
CommandOutput run(const RunConfig &cfg);

//! Runs the command, writes its files under out_dir (if set) and prints the
//! report. Returns 0, or 2 / 3 after printing an error report.
int execute(const RunConfig &cfg);

} // namespace toescat::cli

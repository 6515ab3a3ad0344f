#pragma once
#include "toescat/classifier.hpp"
#include "toescat/model_channel.hpp"
#include "toescat/scattering.hpp"
#include "toescat/toeplitz.hpp"
#include <json.hpp>
#include <string>
#include <vector>

namespace toescat::report {

inline constexpr const char *module_version = "1.0.0";

//! 12 significant digits, scientific notation.
std::string format_double(double x);
//! JSON text with every float in format_double form.
std::string dump(const nlohmann::json &j, int indent = 2);
//! FNV-1a of the canonical config text, 16 hex digits.
std::string config_hash(const nlohmann::json &config);

//! {command, module_version, config, config_hash, result}.
nlohmann::json envelope(const std::string &command, const nlohmann::json &config,
                        nlohmann::json result);
nlohmann::json error_json(const std::string &kind, const std::string &message,
                          int exit_code);

nlohmann::json to_json(const Interval &i);
nlohmann::json to_json(const IntervalSet &s);
nlohmann::json to_json(const MultiplicityReport &r);
nlohmann::json to_json(const SpectrumPartition &p);
nlohmann::json to_json(const CountingReport &r);
//! Summary with the decay exponent flagged as a heuristic proxy.
nlohmann::json to_json(const HankelBlock &h);
nlohmann::json to_json(const ConcentrationProfile &c);
nlohmann::json to_json(const ChannelDecomposition &d);
nlohmann::json to_json(const TwoSidedReport &r);
nlohmann::json to_json(const CookReport &r);
nlohmann::json to_json(const WaveApprox &w);

std::string counting_csv(const std::vector<CountingReport> &rows,
                         const std::string &hash);
std::string hankel_csv(const HankelBlock &h, const std::string &hash);
std::string concentration_csv(const std::vector<ConcentrationProfile> &rows,
                              const std::string &hash);

//! Symbol graph with the thin / thick / mixed bands on the value axis.
std::string partition_svg(const PiecewiseSymbol &symbol,
                          const SpectrumPartition &partition,
                          const std::string &hash);
//! Polyline plot of one or more series sharing the x axis.
std::string series_svg(const std::string &title, const std::vector<double> &x,
                       const std::vector<std::vector<double>> &ys,
                       const std::vector<std::string> &labels, bool log_y,
                       const std::string &hash);

} // namespace toescat::report

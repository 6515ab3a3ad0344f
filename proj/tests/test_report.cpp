#include "toescat/cli.hpp"
#include "toescat/errors.hpp"
#include "toescat/report.hpp"
#include <doctest.h>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace toescat;
using nlohmann::json;

TEST_CASE("number formatting") {
  CHECK(report::format_double(0.5) == "5.00000000000e-01");
  CHECK(report::format_double(-1234.5) == "-1.23450000000e+03");
  CHECK(report::format_double(NAN) == "NaN");
  CHECK(report::format_double(INFINITY) == "Infinity");
  CHECK(report::format_double(-INFINITY) == "-Infinity");

  const json j = {{"a", 0.25}, {"b", 3}, {"c", "x"}, {"d", json::array({1.0, true})}};
  const auto text = report::dump(j, 0);
  CHECK(text.find("2.50000000000e-01") != std::string::npos);
  CHECK(text.find("\"b\":3") != std::string::npos);
  CHECK(text.find("1.00000000000e+00") != std::string::npos);
  CHECK(json::parse(text)["c"] == "x");
}

TEST_CASE("config hashes") {
  const json a = {{"modes", 256}, {"symbol", "fig3"}};
  const json b = {{"symbol", "fig3"}, {"modes", 256}};
  const json c = {{"modes", 128}, {"symbol", "fig3"}};
  const auto h = report::config_hash(a);
  CHECK(h.size() == 16);
  CHECK(h == report::config_hash(b));
  CHECK(h != report::config_hash(c));

  const auto env = report::envelope("classify", a, json{{"x", 1}});
  CHECK(env["command"] == "classify");
  CHECK(env["module_version"] == report::module_version);
  CHECK(env["config_hash"] == h);
  const auto err = report::error_json("InvalidConfig", "bad", 2);
  CHECK(err.dump().find("InvalidConfig") != std::string::npos);
}

TEST_CASE("structured reports") {
  const auto fig3 = PiecewiseSymbol::fig3();
  const auto part = partition_spectrum(fig3);
  const auto j = report::to_json(part);
  CHECK(j["thin"].size() == 1);
  CHECK(j["mixed"].size() == 2);
  const auto svg = report::partition_svg(fig3, part, "0123456789abcdef");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  const auto row = counting_report(PiecewiseSymbol::cosine(), 64, -0.5, 0.5);
  const auto csv = report::counting_csv({row}, "0123456789abcdef");
  CHECK(csv.find("config_hash=0123456789abcdef") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 3);

  const auto h = hankel_block(PiecewiseSymbol::cosine(), 16);
  const auto hj = report::to_json(h);
  CHECK(hj["numerical_rank"] == 1);
  CHECK(hj["decay_exponent_kind"] == "heuristic");
  const auto hcsv = report::hankel_csv(h, "0123456789abcdef");
  CHECK(hcsv.find("k,sigma_k") != std::string::npos);
}

TEST_CASE("command runner") {
  cli::RunConfig cfg;
  cfg.command = "classify";
  const auto out = cli::run(cfg);
  CHECK(out.report["partition"]["thick"].size() == 1);
  const auto again = cli::run(cfg);
  CHECK(report::dump(out.report) == report::dump(again.report));

  cfg.command = "channels";
  cfg.symbol = "cosine";
  CHECK(cli::run(cfg).report["jumps"].empty());

  const auto dir = std::filesystem::temp_directory_path() / "toescat_report_test";
  std::filesystem::remove_all(dir);
  cfg.command = "classify";
  cfg.symbol = "fig3";
  cfg.out_dir = dir.string();
  CHECK(cli::execute(cfg) == 0);
  CHECK(std::filesystem::exists(dir / "classify.json"));
  CHECK(std::filesystem::exists(dir / "partition.svg"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration validation") {
  CHECK(cli::parse_range("0.2:0.8") == std::pair{0.2, 0.8});
  CHECK_THROWS_AS(cli::parse_range("0.2"), InvalidConfig);
  CHECK_THROWS_AS(cli::parse_range("a:b"), InvalidConfig);

  cli::RunConfig cfg;
  cfg.command = "classify";
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.modes = 4;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = cfg;
  bad.grid = 1000;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = cfg;
  bad.t_star = 500.0;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = cfg;
  bad.bump = {0.7, 0.3};
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = cfg;
  bad.command = "frobnicate";
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = cfg;
  bad.symbol = "nonsense";
  CHECK(cli::execute(bad) == 2);
}

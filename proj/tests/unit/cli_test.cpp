#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "syspredict/csv.hpp"
#include "syspredict/error.hpp"

using namespace syspredict;
using nlohmann::json;

namespace {

json bridge_config() {
  return json::parse(R"({
    "structures": {"t1": {"n": 3, "paths": [[1, 2, 3]]}, "t": {"n": 3, "paths": [[1], [2, 3]]}},
    "copula": {"family": "product"},
    "marginal": {"family": "exponential", "mean": 1},
    "case": "I",
    "grid": [0, 0.5, 1, 2]
  })");
}

json guard_config() {
  json j = bridge_config();
  j["structures"]["t"]["paths"] = json::parse("[[1, 2], [1, 3]]");
  j["case"] = "IIa";
  return j;
}

ErrorCode config_error(const json& j) {
  try {
    cli::parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

csv::Table run(void (*cmd)(const cli::RunConfig&, std::ostream&), const json& j) {
  std::stringstream out;
  cmd(cli::parse_config(j), out);
  return csv::parse(out);
}

struct Result {
  int status;
  std::string err;
};

Result run_binary(const std::string& args, const json& cfg) {
  const std::string dir = "cli_test_" + std::to_string(getpid());
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/c.json") << cfg.dump();
  const std::string cmd = std::string(SYSPREDICT_CLI) + " " + args + " --config " + dir + "/c.json --out " + dir +
                          "/o.csv 2>" + dir + "/err.txt";
  const int raw = std::system(cmd.c_str());
  std::ifstream e(dir + "/err.txt");
  std::stringstream ss;
  ss << e.rdbuf();
  std::filesystem::remove_all(dir);
  return {WEXITSTATUS(raw), ss.str()};
}

}  // namespace

TEST(Config, Rejections) {
  json j = bridge_config();
  j["colour"] = "red";
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["copula"] = {{"family", "gumbel"}};
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["structures"]["t"].erase("paths");
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["case"] = "III";
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["marginal"] = {{"family", "weibull"}};
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["seed"] = -3;
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
  j = bridge_config();
  j["coverage"] = {{"protocol", "other"}};
  EXPECT_EQ(config_error(j), ErrorCode::kConfig);
}

TEST(Config, Defaults) {
  json j = bridge_config();
  j.erase("copula");
  j.erase("marginal");
  const cli::RunConfig c = cli::parse_config(j);
  ASSERT_TRUE(c.copula.has_value());
  EXPECT_EQ(c.copula->family(), CopulaFamily::kProduct);
  EXPECT_EQ(c.marginal->describe(), "exponential(mean=1)");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.levels, (std::vector<double>{0.5, 0.9}));
}

TEST(Commands, CurvesBridge) {
  const csv::Table t = run(cli::cmd_curves, bridge_config());
  ASSERT_EQ(t.rows.size(), 4u);
  const std::size_t med = t.column("median"), mean = t.column("mean"), t0 = t.column("t");
  for (const auto& r : t.rows) {
    const double x = csv::to_double(r[t0]);
    EXPECT_NEAR(csv::to_double(r[med]), x + 0.5427656, 1e-7);
    EXPECT_NEAR(csv::to_double(r[mean]), x + 5.0 / 6, 1e-8);
  }
}

TEST(Commands, CurvesGuardMedian) {
  // Case IIa: T - t given T > T1 = t is exponential(1/2)
  const csv::Table t = run(cli::cmd_curves, guard_config());
  for (const auto& r : t.rows) {
    EXPECT_NEAR(csv::to_double(r[t.column("median")]), csv::to_double(r[t.column("t")]) + 0.3465736, 1e-7);
  }
}

TEST(Commands, Predict) {
  json j = bridge_config();
  j["t1"] = 0.5;
  j["w"] = {0.25, 0.5};
  const csv::Table t = run(cli::cmd_predict, j);
  ASSERT_EQ(t.header, (std::vector<std::string>{"quantity", "level", "value"}));
  ASSERT_EQ(t.rows.size(), 7u);  // 2 quantiles, mean, 2 bands
  EXPECT_EQ(t.rows[1][0], "quantile");
  EXPECT_NEAR(csv::to_double(t.rows[1][2]), 1.0427656, 1e-7);
  EXPECT_EQ(t.rows[2][0], "mean");
  j["w"] = {1.5};
  EXPECT_THROW(run(cli::cmd_predict, j), Error);
}

TEST(Commands, SimulateAndFit) {
  json j = bridge_config();
  j["size"] = 300;
  j["seed"] = 4;
  std::stringstream a, b;
  cli::cmd_simulate(cli::parse_config(j), a);
  cli::cmd_simulate(cli::parse_config(j), b);
  EXPECT_EQ(a.str(), b.str());
  const SampleSet s = csv::read_samples(a);
  EXPECT_EQ(s.size(), 300u);
  cli::RunConfig c = cli::parse_config(j);
  cli::apply(c, {std::nullopt, std::size_t{0}, std::nullopt});
  std::stringstream z;
  EXPECT_THROW(cli::cmd_simulate(c, z), Error);
  cli::apply(c, {std::uint64_t{9}, std::size_t{5}, std::nullopt});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.raw["seed"], 9);
}

TEST(Commands, Metadata) {
  const cli::RunConfig c = cli::parse_config(bridge_config());
  const json m = json::parse(cli::metadata("curves", c));
  EXPECT_EQ(m["command"], "curves");
  EXPECT_EQ(m["seed"], 1);
  EXPECT_EQ(m["config"], bridge_config());
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("curves", bridge_config()).status, 0);
  json bad = bridge_config();
  bad["grid"] = json::array();
  const Result empty = run_binary("curves", bad);
  EXPECT_NE(empty.status, 0);
  EXPECT_EQ(empty.err.rfind("error[", 0), 0u) << empty.err;
  bad = bridge_config();
  bad["nonsense"] = 1;
  const Result cfg = run_binary("curves", bad);
  EXPECT_EQ(cfg.status, 2);
  EXPECT_NE(cfg.err.find("error[ConfigError]"), std::string::npos) << cfg.err;
  EXPECT_EQ(run_binary("frobnicate", bridge_config()).status, 2);
  json fit = bridge_config();
  fit["taus"] = {0.5};
  const Result io = run_binary("fitqr --input /nonexistent/x.csv", fit);
  EXPECT_EQ(io.status, 3) << io.err;
  json zero = bridge_config();
  zero["size"] = 0;
  EXPECT_NE(run_binary("simulate", zero).status, 0);
}

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "plateball/commands.hpp"
#include "plateball/errors.hpp"

using namespace plateball;
constexpr double pi = std::numbers::pi;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI binary with stdout captured in a temporary file.
CliRun run_cli(const std::string& args) {
  const auto tmp = std::filesystem::temp_directory_path() / ("plateball_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string(PLATEBALL_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(tmp);
  return r;
}

}  // namespace

TEST(NumberFormat, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(pi), "3.141592653589793");
  EXPECT_EQ(format_number(-0.0), "-0");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(format_number(INFINITY), "inf");
  for (double v : {pi, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.5})
    EXPECT_EQ(parse_number(format_number(v)), v);
  EXPECT_TRUE(std::isnan(parse_number("nan")));
  EXPECT_THROW(parse_number("1.0x"), std::invalid_argument);
}

TEST(OutputRecord, CsvRoundTripIsByteIdentical) {
  const OutputRecord rec = cmd_bounds("p1", 0.05, 3.0, 40);
  const std::string csv = rec.to_csv();
  const OutputRecord back = OutputRecord::from_csv(csv);
  EXPECT_EQ(back.schema, rec.schema);
  EXPECT_EQ(back.columns, rec.columns);
  EXPECT_EQ(back.rows, rec.rows);
  EXPECT_EQ(back.to_csv(), csv);
}

TEST(OutputRecord, JsonShape) {
  OutputRecord rec = cmd_root("p1", 0.5);
  const auto j = nlohmann::json::parse(rec.to_json());
  EXPECT_EQ(j.at("schema"), "plateball.root.p1");
  EXPECT_EQ(j.at("columns").size(), rec.columns.size());
  EXPECT_DOUBLE_EQ(j.at("rows").at(0).at(1).get<double>(), pi);
}

TEST(Commands, Examples) {
  const OutputRecord r = cmd_root("p1", 0.3333333333);
  EXPECT_NEAR(r.column_values("value")[0], pi / 2, 1e-8);
  const OutputRecord e = cmd_eval("g1", {{"p", 0.0}, {"m", 0.5}});
  EXPECT_EQ(e.column_values("value")[0], 0.0);
  const OutputRecord c = cmd_crossings(1);
  ASSERT_FALSE(c.rows.empty());
  EXPECT_EQ(c.rows[0][c.column("k")], 1.0);
  EXPECT_EQ(c.rows[0][c.column("m")], 0.5);
  EXPECT_NEAR(c.rows[0][c.column("p")], pi, 1e-12);
}

TEST(Commands, BoundsSkipBandAndKeepOrder) {
  CommandConfig cfg;
  cfg.threads = 3;
  const OutputRecord rec = cmd_bounds("p1p2", 0.9, 1.1, 21, cfg);
  const auto m = rec.column_values("m");
  EXPECT_EQ(m.size(), 20u);  // m = 1 dropped
  for (std::size_t i = 1; i < m.size(); ++i) EXPECT_LT(m[i - 1], m[i]);
  EXPECT_THROW(cmd_bounds("fig9", 0.1, 0.2, 3), DomainError);
}

TEST(Commands, TrajectoryWarnsOutsideRegime) {
  PendulumInit in;
  in.m = 0.5;
  in.rho0 = 0.5;
  const OutputRecord rec = cmd_trajectory(in, 0.0, 1.0, 3);
  bool warned = false;
  for (const auto& [k, v] : rec.meta) warned |= k == "warning";
  EXPECT_TRUE(warned);
  EXPECT_EQ(rec.rows.size(), 3u);
}

TEST(Commands, ConfigRejectsUnknownKeys) {
  const auto path = std::filesystem::temp_directory_path() / "plateball_bad_config.json";
  std::ofstream(path) << R"({"tol": 1e-10, "bogus": 1})";
  EXPECT_THROW(load_config(path.string()), std::invalid_argument);
  std::ofstream(path) << R"({"tol": 1e-10, "grid": {"m_points_per_side": 10}})";
  const CommandConfig cfg = load_config(path.string());
  EXPECT_EQ(cfg.tol, 1e-10);
  EXPECT_EQ(cfg.grid.m_points_per_side, 10);
  std::filesystem::remove(path);
}

TEST(Binary, ExitCodes) {
  const CliRun ok = run_cli("eval g1 --p 0 --m 0.5");
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("p,m,value"), std::string::npos);
  EXPECT_NE(ok.out.find("0,0.5,0"), std::string::npos);
  EXPECT_EQ(run_cli("eval g1 --p 1 --m 1").code, kExitDomain);
  EXPECT_EQ(run_cli("nosuch").code, kExitDomain);
  EXPECT_EQ(run_cli("root p1").code, kExitDomain);
  EXPECT_EQ(run_cli("verify --m-points 20 --s-points 20 --slack -1").code, kExitVerificationFailed);
}

TEST(Binary, RootFailureExitCode) {
  EXPECT_EQ(exit_code_for(NoRootFound("x")), kExitNoRoot);
  EXPECT_EQ(exit_code_for(DomainError("x")), kExitDomain);
}

TEST(Binary, JsonAndFileOutput) {
  const auto path = std::filesystem::temp_directory_path() / "plateball_cli_root.json";
  const CliRun r = run_cli("--format json --out " + path.string() + " root p2 --m 1.5");
  EXPECT_EQ(r.code, kExitOk);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_NEAR(j.at("rows").at(0).at(1).get<double>(), 3 * pi, 1e-10);
  std::filesystem::remove(path);
}

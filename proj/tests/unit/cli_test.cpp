#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morphshop/cli.hpp"
#include "unit/test_support.hpp"

using morphshop::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = morphshop::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixturePath(name); }

std::filesystem::path writeTemp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("morphshop_cli_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, ComposeMotorVehicle) {
  const auto r = cli({"compose", fx("motor-vehicle.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0]["w"], 3);
  EXPECT_EQ(j[0]["n"], Json({2, 1, 0}));
  EXPECT_EQ(j[0]["selection"], Json({{"A", "A1"}, {"B", "B1"}, {"C", "C2"}}));
  EXPECT_EQ(j[3]["w"], 2);
}

TEST(Cli, ComposeNodeAndMode) {
  const auto r = cli({"compose", fx("repair-plan.json"), "--node", "M", "--mode", "level"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_FALSE(j.empty());
  EXPECT_TRUE(j[0].contains("parts"));
  EXPECT_EQ(cli({"compose", fx("repair-plan.json"), "--node", "nope"}).code, 1);
  EXPECT_EQ(cli({"compose", fx("repair-plan.json"), "--mode", "odd"}).code, 2);
}

TEST(Cli, RankLayers) {
  const auto r = cli({"rank", fx("criteria-layers.json"), "--method", "layers"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["priorityOf"], Json({{"A1", 1}, {"A2", 3}, {"A3", 2}, {"A4", 1}, {"A5", 2}}));
}

TEST(Cli, SolveKnapsack) {
  auto r = cli({"solve", "knapsack", fx("knapsack-small.json"), "--budget", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["chosen"], Json({"2", "3", "4"}));
  r = cli({"solve", "knapsack", fx("knapsack-small.json"), "--budget", "6", "--solver", "exact"});
  EXPECT_EQ(Json::parse(r.out)["totalProfit"], 9);
  r = cli({"solve", "mckp", fx("car-mckp.json")});
  EXPECT_EQ(Json::parse(r.out)["totalCost"], 14);
  EXPECT_EQ(cli({"solve", "mckp", fx("car-mckp.json"), "--budget", "3"}).code, 1);
}

TEST(Cli, AggregateAndTrajectory) {
  auto r = cli({"aggregate", fx("car-extend.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["selection"]["E"], "E5");
  r = cli({"aggregate", fx("car-extend.json"), "--model", fx("car-model.json"), "--budget", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["selection"]["Z"], "Z3");
  r = cli({"aggregate", fx("car-median.json")});
  EXPECT_EQ(Json::parse(r.out)["medianIndex"], 0);
  r = cli({"trajectory", fx("pc-trajectory.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)[0]["picks"], Json({"S2", "S2_2", "S3_1"}));
}

TEST(Cli, ValidateEveryFixture) {
  for (const auto& entry : std::filesystem::directory_iterator(MORPHSHOP_FIXTURE_DIR)) {
    SCOPED_TRACE(entry.path().string());
    const auto r = cli({"validate", entry.path().string()});
    EXPECT_EQ(r.code, 0) << r.err;
  }
}

TEST(Cli, ValidateSelection) {
  auto r = cli({"validate", fx("motor-vehicle.json"), "--selection", R"({"A":"A1","B":"B1","C":"C2"})"});
  EXPECT_EQ(r.code, 0) << r.err;
  r = cli({"validate", fx("motor-vehicle.json"), "--selection", R"({"A":"A1"})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["violations"].empty());
  EXPECT_EQ(cli({"validate", fx("knapsack-small.json"), "--selection", "{}"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"compose", fx("does-not-exist.json")}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  const auto bad = writeTemp("bad.json", R"({"tree": {"id": "S"}, "components": [], "bogus": 1})");
  const auto r = cli({"validate", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, MaxSolutionsFlagAndEnv) {
  auto r = cli({"compose", fx("motor-vehicle.json"), "--max-solutions", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ExplosionError"), std::string::npos);
  ::setenv("MORPHSHOP_MAX_SOLUTIONS", "2", 1);
  r = cli({"compose", fx("motor-vehicle.json")});
  ::unsetenv("MORPHSHOP_MAX_SOLUTIONS");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(cli({"compose", fx("motor-vehicle.json")}).code, 0);
}

TEST(Cli, TableFormat) {
  const auto r = cli({"--format", "table", "compose", fx("motor-vehicle.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("#", 0), 0u);
  EXPECT_NE(r.out.find("(3;2,1,0)"), std::string::npos);
  EXPECT_NE(r.out.find("A1*B1*C2"), std::string::npos);
  EXPECT_EQ(cli({"compose", fx("motor-vehicle.json"), "--format", "table"}).out, r.out);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "morphshop_cli_out.json";
  std::filesystem::remove(path);
  const auto r = cli({"--output", path.string(), "solve", "knapsack", fx("knapsack-small.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(Json::parse(in)["totalProfit"], 7);
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compose", fx("repair-plan.json"), "--mode", "level"},
           {"compose", fx("extended-product.json")},
           {"trajectory", fx("pc-trajectory.json")},
           {"aggregate", fx("car-newdesign.json")}}) {
    const auto a = cli(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, cli(args).out);
  }
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "curvecross/curve_io.hpp"
#include "curvecross/sampling.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace curvecross;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("curvecross_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

json strip_clock(json j) {
  if (j.contains("manifest")) j["manifest"].erase("wall_clock_seconds");
  return j;
}

}  // namespace

TEST(ParseRange, Forms) {
  EXPECT_EQ(cli::parse_range("1..3"), (std::pair<unsigned, unsigned>{1, 3}));
  EXPECT_EQ(cli::parse_range("4"), (std::pair<unsigned, unsigned>{4, 4}));
  EXPECT_ANY_THROW(cli::parse_range("3..1"));
  EXPECT_ANY_THROW(cli::parse_range("a..b"));
}

TEST(CliExact, FirstDegree) {
  const Outcome o = run_cli({"exact", "--N", "1", "--r", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["exact"], "512/225");
  EXPECT_EQ(j["numerator"], "512");
  EXPECT_EQ(j["denominator"], "225");
  EXPECT_NEAR(j["approx"].get<double>(), 512.0 / 225.0, 1e-15);
  EXPECT_TRUE(j.contains("manifest"));
}

TEST(CliExact, DegreeZero) {
  const Outcome o = run_cli({"exact", "--N", "0", "--r", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["exact"], "0");
}

TEST(CliExact, SweepEmitsCsvRows) {
  const Outcome o = run_cli({"exact", "--sweep", "1..50", "--r", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "N,numerator,denominator,approx,asymptote_ratio");
  std::vector<double> ratios;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ratios.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  ASSERT_EQ(ratios.size(), 50u);
  EXPECT_LT(std::abs(ratios.back() - 1), std::abs(ratios.front() - 1));
}

TEST(CliSimulate, DegreeZeroMeanIsZero) {
  const Outcome o = run_cli({"simulate", "--N", "0", "--samples", "100"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["mean"].get<double>(), 0.0);
  EXPECT_EQ(j["samples_used"].get<int>(), 100);
}

TEST_F(CliTest, SimulateIsDeterministicAndWritesCsv) {
  const std::string csv = (dir_ / "s.csv").string();
  const std::vector<std::string> args = {"simulate", "--N", "1", "--samples", "500", "--seed", "42", "--csv", csv};
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(strip_clock(json::parse(a.out)), strip_clock(json::parse(b.out)));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "sample_index,count,degenerate");
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  EXPECT_EQ(rows, 500);
  const json j = json::parse(a.out);
  for (const char* key : {"mean", "stderr", "ci95", "exact", "z_score", "histogram", "manifest"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["manifest"]["seed"].get<std::uint64_t>(), 42u);
  EXPECT_TRUE(fs::exists(csv + ".manifest.json"));
}

TEST_F(CliTest, SimulateRejectsBadDistribution) {
  EXPECT_EQ(run_cli({"simulate", "--N", "1", "--distribution", "gauss"}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "--N", "1", "--distribution", "maxnorm:-1", "--samples", "10"}).code, 1);
}

TEST_F(CliTest, CountTwoCircleFixture) {
  const std::string f = write("circle.json", to_curve_json(curvecross::testing::circle(0, 0, 1), SobolevOrder{0}));
  const std::string g = write("shifted_circle.json", to_curve_json(curvecross::testing::circle(1.5, 0, 1), SobolevOrder{0}));
  const Outcome o = run_cli({"count", f, g});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["count"].get<int>(), 2);
  EXPECT_FALSE(j["degenerate"].get<bool>());
  EXPECT_EQ(j["solutions"].size(), 2u);
}

TEST_F(CliTest, CountReportsMalformedFiles) {
  const std::string good = write("good.json", to_curve_json(curvecross::testing::circle(0, 0, 1), SobolevOrder{0}));
  const std::string bad = write("bad.json", "{\n  \"degree\": 1,\n  \"x\": [\n}");
  const Outcome o = run_cli({"count", good, bad});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("line"), std::string::npos) << o.err;
  EXPECT_EQ(run_cli({"count", good, (dir_ / "missing.json").string()}).code, 3);
  const std::string schema = write("schema.json", R"({"degree": 1, "x": {"a": [0], "b": [0]}, "y": {"a": [0, 0], "b": [0]}})");
  EXPECT_EQ(run_cli({"count", good, schema}).code, 3);
}

TEST_F(CliTest, SampleFilesRoundTrip) {
  const Outcome o = run_cli({"sample", "--N", "2", "--count", "3", "--seed", "7", "--out", dir_.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  ASSERT_TRUE(fs::exists(dir_ / "manifest.json"));
  const json manifest = json::parse(std::ifstream(dir_ / "manifest.json"));
  ASSERT_EQ(manifest["curves"].size(), 3u);
  for (const json& entry : manifest["curves"]) {
    std::ifstream in(dir_ / entry["file"].get<std::string>());
    std::stringstream ss;
    ss << in.rdbuf();
    const CurveFile cf = parse_curve_json(ss.str());
    EXPECT_LE(norm(cf.curve, cf.r), 1.0);
    const TrigCurve expected = sample_unit_ball_curve(
        2, SobolevOrder{0}, SeedSpec{entry["master_seed"].get<std::uint64_t>(), entry["stream_index"].get<std::uint64_t>()});
    EXPECT_EQ(cf.curve, expected);
  }
}

TEST(CliVerify, SingleDegreePasses) {
  const Outcome o = run_cli({"verify", "--N", "1", "--samples", "20000"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
}

TEST(CliVerify, DegreeOutOfRangeIsUsageError) {
  EXPECT_EQ(run_cli({"verify", "--N", "9"}).code, 1);
}

TEST(CliUsage, UnknownCommandsAndFlags) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"exact", "--bogus"}).code, 1);
  EXPECT_EQ(run_cli({"simulate"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

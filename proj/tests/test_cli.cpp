// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "relaycov/io.hpp"

namespace relaycov {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(RELAYCOV_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) {
  return std::string(RELAYCOV_SOURCE_DIR) + "/configs/" + name;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("relaycov_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, EquilateralRates) {
  const std::string layout = " --p1 1 --p2 1 --alpha 2 --rate 1 --d 1 --x 1 --theta 1.0471975511965976 --json";
  const CliResult df = run("rate --scheme df-full" + layout);
  ASSERT_EQ(df.code, 0) << df.out;
  EXPECT_NEAR(json::parse(df.out).at("rate").get<double>(), 1.0, 1e-9);
  const CliResult cf = run("rate --scheme cf-full" + layout);
  ASSERT_EQ(cf.code, 0) << cf.out;
  EXPECT_NEAR(json::parse(cf.out).at("rate").get<double>(), std::log2(2.25), 1e-9);
}

TEST_F(Cli, FlagsOverrideConfig) {
  const CliResult r = run("rate --config " + config("fig3.toml") + " --rate 1 --d 1 --x 1 --theta 0 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("params").at("rate").get<double>(), 1.0);
  EXPECT_EQ(j.at("params").at("alpha").get<double>(), 3.52);
}

TEST_F(Cli, BoundsExamples) {
  const CliResult a2 = run("bounds --config " + config("fig6.toml") + " --json");
  ASSERT_EQ(a2.code, 0) << a2.out;
  const json j2 = json::parse(a2.out);
  EXPECT_NEAR(j2.at("upper").get<double>() / j2.at("lower").get<double>(), 1.02216, 1e-4);
  const CliResult a4 = run("bounds --config " + config("fig7.toml") + " --rho 0.93 --json");
  ASSERT_EQ(a4.code, 0) << a4.out;
  EXPECT_NEAR(json::parse(a4.out).at("lower_over_pi_dc2").get<double>(), 2.0441, 5e-4);
  const CliResult a3 = run("bounds --alpha 3");
  EXPECT_EQ(a3.code, 2);
  EXPECT_NE(a3.out.find("bounds defined only for α ∈ {2,4}"), std::string::npos) << a3.out;
  EXPECT_EQ(run("bounds --config " + config("fig6.toml") + " --d 100").code, 2);
}

TEST_F(Cli, RegionOrderingFiles) {
  const CliResult r = run("region --config " + config("fig3.toml") + " --d 0.9 --scheme df-full,cf-full,nr --n-theta 90 " +
                    "--out-prefix " + path("rate3"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto load = [&](const std::string& s) {
    std::ifstream in(path("rate3_" + s + ".csv"));
    return read_region_csv(in);
  };
  const RegionTable df = load("df-full");
  const RegionTable cf = load("cf-full");
  const RegionTable nr = load("nr-full");
  ASSERT_EQ(df.radii.size(), 90u);
  for (std::size_t k = 0; k < 90; ++k) {
    EXPECT_GE(df.radii[k], cf.radii[k] - 2e-9);
    EXPECT_GE(cf.radii[k], nr.radii[k] - 2e-9);
  }
  // CSV and JSON carry the same 12-digit radii.
  std::ifstream jin(path("rate3_cf-full.json"));
  const CoverageRegion reg = region_from_json(json::parse(jin));
  ASSERT_EQ(reg.radii.size(), cf.radii.size());
  for (std::size_t k = 0; k < 90; ++k) EXPECT_EQ(reg.radii[k], cf.radii[k]);
}

TEST_F(Cli, DirectLinkAreaIsUnitDisk) {
  for (const char* cfg : {"fig3.toml", "fig6.toml", "fig8.toml"}) {
    const CliResult r = run("region --config " + config(cfg) + " --scheme nr --d 0.5 --json");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NEAR(json::parse(r.out).at("regions").at(0).at("area_over_pi_dc2").get<double>(), 1.0, 1e-6);
  }
}

TEST_F(Cli, RayleighRegionIsSeedDeterministic) {
  const std::string args = "region --config " + config("fig8.toml") + " --scheme df-rayleigh --n-theta 16 --samples 5000 --csv ";
  ASSERT_EQ(run(args + path("a.csv")).code, 0);
  ASSERT_EQ(run(args + path("b.csv") + " --threads 1").code, 0);
  ASSERT_EQ(run(args + path("c.csv") + " --seed 7").code, 0);
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  EXPECT_NE(read_file(path("a.csv")), read_file(path("c.csv")));
  EXPECT_NE(read_file(path("a.csv")).find("theta,radius,outage,stderr"), std::string::npos);
}

TEST_F(Cli, VerifyExamples) {
  const CliResult t1 = run("verify --suite theorem1 --config " + config("fig3.toml") + " --n-theta 180");
  EXPECT_EQ(t1.code, 0) << t1.out;
  const CliResult l2 = run("verify --suite lemma2 --config " + config("phasefade.toml") + " --n-theta 180 --out " +
                     path("l2.json"));
  EXPECT_EQ(l2.code, 0) << l2.out;
  EXPECT_TRUE(fs::exists(path("l2.json")));
  const CliResult t2 = run("verify --suite theorem2b --p1 1 --p2 1e-4 --alpha 2 --rate 1 --json");
  ASSERT_EQ(t2.code, 0) << t2.out;
  const json w = json::parse(t2.out);
  EXPECT_EQ(w.at("verdict"), "pass");
  EXPECT_TRUE(w.at("values").contains("x0"));
  EXPECT_EQ(run("verify --suite nope").code, 2);
}

TEST_F(Cli, SweepRowsAreSandwiched) {
  const CliResult r = run("sweep --config " + config("fig6.toml") + " --steps 8 --n-theta 180");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "d,area,lower,upper");
  double first_area = 0.0;
  double last_area = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double d, area, lower, upper;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &d, &area, &lower, &upper), 4) << line;
    EXPECT_LE(lower, area * (1.0 + 1e-4));
    EXPECT_GE(upper, area * (1.0 - 1e-4));
    if (rows == 0) first_area = area;
    last_area = area;
    ++rows;
  }
  EXPECT_EQ(rows, 8);
  EXPECT_LT(last_area, first_area);
}

TEST_F(Cli, PlotIsDeterministicAndMarksEmptyRegions) {
  ASSERT_EQ(run("region --config " + config("fig4.toml") + " --d 2 --scheme df,nr --n-theta 64 --out-prefix " +
                path("rate4")).code,
            0);
  const std::string inputs = " --input " + path("rate4_df-full.json") + " --input " + path("rate4_nr-full.csv") +
                             " --label DF --label NR --d 2";
  ASSERT_EQ(run("plot" + inputs + " --out " + path("a.svg")).code, 0);
  ASSERT_EQ(run("plot" + inputs + " --out " + path("b.svg")).code, 0);
  const std::string svg = read_file(path("a.svg"));
  EXPECT_EQ(svg, read_file(path("b.svg")));
  EXPECT_NE(svg.find("viewBox"), std::string::npos);
  EXPECT_NE(svg.find("DF: \xE2\x88\x85"), std::string::npos);
  EXPECT_EQ(run("plot --input " + path("missing.csv") + " --out " + path("c.svg")).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("region --n-theta 15").code, 2);
  EXPECT_EQ(run("rate --scheme warp").code, 2);
  EXPECT_EQ(run("rate --p1 -1").code, 2);
}

}  // namespace
}  // namespace relaycov

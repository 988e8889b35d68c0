// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "relaycov/coverage.hpp"
#include "relaycov/io.hpp"
#include "relaycov/svg.hpp"

namespace relaycov {
namespace {

const ChannelParams kRate3{10.0, 10.0, 3.52, 3.0};

TEST(Numbers, FormatAndParse) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(format_number(-2e-7), "-2e-07");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(1.1066396807223224), "1.10663968072");
  EXPECT_DOUBLE_EQ(parse_number(" +3.25\r"), 3.25);
  EXPECT_THROW(parse_number("3.2x"), PreconditionError);
  EXPECT_THROW(parse_number(""), PreconditionError);
  EXPECT_DOUBLE_EQ(round_digits(1.1066396807223224), 1.10663968072);
}

TEST(Csv, RoundTrip) {
  const CoverageRegion reg = region(kRate3, {Strategy::CF, Model::FullDuplex}, 0.8, 32);
  std::stringstream ss;
  write_region_csv(ss, reg);
  const RegionTable t = read_region_csv(ss);
  ASSERT_EQ(t.radii.size(), 32u);
  EXPECT_TRUE(t.outage.empty());
  for (std::size_t k = 0; k < 32; ++k) {
    EXPECT_NEAR(t.thetas[k], reg.thetas[k], 1e-11);
    EXPECT_NEAR(t.radii[k], reg.radii[k], 1e-11 * reg.radii[k]);
  }
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream bad_header("x,y\n1,2\n");
  EXPECT_THROW(read_region_csv(bad_header), PreconditionError);
  std::stringstream bad_row("theta,radius\n1,2,3\n");
  EXPECT_THROW(read_region_csv(bad_row), PreconditionError);
  std::stringstream no_rows("theta,radius\n");
  EXPECT_THROW(read_region_csv(no_rows), PreconditionError);
}

TEST(Json, RegionRoundTrip) {
  const CoverageRegion reg = region(kRate3, {Strategy::DF, Model::HalfDuplex, 0.3}, 0.5, 16);
  const json j = region_json(reg);
  EXPECT_EQ(j.at("scheme"), "df-half");
  EXPECT_DOUBLE_EQ(j.at("listen_fraction").get<double>(), 0.3);
  const CoverageRegion back = region_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.scheme, reg.scheme);
  ASSERT_EQ(back.radii.size(), reg.radii.size());
  for (std::size_t k = 0; k < reg.radii.size(); ++k) EXPECT_NEAR(back.radii[k], reg.radii[k], 1e-11);
  EXPECT_EQ(back.empty, reg.empty);
}

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in(
      "# channel\n[channel]\np1 = 10\nrate = \"3.52\"  # target\nn_theta=90\n\nscheme = \"df-full,cf-full\"\n");
  const auto kv = parse_config(in);
  ASSERT_EQ(kv.size(), 4u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"p1", "10"}));
  EXPECT_EQ(kv[1].second, "3.52");
  EXPECT_EQ(kv[2].first, "n-theta");
  EXPECT_EQ(kv[3].second, "df-full,cf-full");
  std::istringstream bad("p1 10\n");
  EXPECT_THROW(parse_config(bad), PreconditionError);
}

PlotSpec sample_plot() {
  PlotSpec spec;
  const CoverageRegion reg = region(kRate3, {Strategy::NR, Model::FullDuplex}, 0.5, 32);
  spec.layers.push_back(region_layer(reg, {"blue", "", 1.5}, "NR"));
  PlotLayer none;
  none.label = "DF";
  none.empty = true;
  spec.layers.push_back(none);
  spec.layers.push_back(node_layer(0.5));
  spec.title = "a < b & c";
  fit_axes(spec);
  return spec;
}

TEST(Svg, DeterministicAndEscaped) {
  const std::string a = render_svg(sample_plot());
  const std::string b = render_svg(sample_plot());
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(a.find("<polygon"), std::string::npos);
}

TEST(Svg, EmptyRegionGetsLegendEntry) {
  const std::string svg = render_svg(sample_plot());
  EXPECT_NE(svg.find("DF: \xE2\x88\x85"), std::string::npos);
}

TEST(Svg, RejectsBadSpec) {
  PlotSpec spec;
  EXPECT_THROW(render_svg(spec), PreconditionError);
  spec = sample_plot();
  spec.x_max = spec.x_min;
  EXPECT_THROW(render_svg(spec), PreconditionError);
}

}  // namespace
}  // namespace relaycov

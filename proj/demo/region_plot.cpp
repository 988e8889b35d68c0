// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

// DF, CF and NR regions for P1 = P2 = 10, alpha = 3.52, R = 3 with the relay
// at 0.9 d_c, written as one SVG (argv[1], default regions.svg).

#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "relaycov/relaycov.hpp"
#include "relaycov/svg.hpp"

int main(int argc, char** argv) {
  using namespace relaycov;
  const std::string out = argc > 1 ? argv[1] : "regions.svg";
  const ChannelParams p{10.0, 10.0, 3.52, 3.0};
  const double d = 0.9 * critical_distance(p);

  PlotSpec spec;
  spec.title = "P1 = P2 = 10, alpha = 3.52, R = 3, d = 0.9 d_c";
  std::size_t color = 0;
  for (const char* name : {"df-full", "cf-full", "nr"}) {
    const CoverageRegion reg = region(p, parse_scheme(name), d, 360);
    std::printf("%-8s area/(pi d_c^2) = %s\n", name,
                format_number(area(reg) / (std::numbers::pi * critical_distance(p) * critical_distance(p)), 8).c_str());
    spec.layers.push_back(region_layer(reg, {palette_color(color++), "", 1.5}, name));
  }
  spec.layers.push_back(node_layer(d));
  fit_axes(spec);
  std::ofstream(out) << render_svg(spec);
  std::printf("wrote %s\n", out.c_str());
}

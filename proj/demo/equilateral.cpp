// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

// Rates of every scheme when source, relay and destination form a unit
// equilateral triangle with P1 = P2 = 1.

#include <cstdio>
#include <numbers>

#include "relaycov/relaycov.hpp"

int main() {
  using namespace relaycov;
  const ChannelParams p{1.0, 1.0, 2.0, 1.0};
  const Layout l{1.0, 1.0, std::numbers::pi / 3.0};
  for (const char* name : {"nr", "df-full", "cf-full", "ub-full", "df-half", "cf-half", "df-phase", "ub-phase"}) {
    const Scheme s = parse_scheme(name);
    std::printf("%-9s %s\n", name, format_number(evaluate(p, s, l).rate).c_str());
  }
}

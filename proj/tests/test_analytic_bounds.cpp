// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "relaycov/analytic_bounds.hpp"
#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"

namespace relaycov {
namespace {

const ChannelParams kA2{10.0, 10.0, 2.0, 1.0};
const ChannelParams kA4{10.0, 10.0, 4.0, 1.0};

// 1 - rho without cancellation, from q = (d/d_c)^alpha.
double one_minus_rho(double d_frac, double alpha) {
  const double q = std::pow(d_frac, alpha);
  return q / (1.0 + std::sqrt(1.0 - q));
}

TEST(EllipseAlpha2, ValuesAtCriticalDistance) {
  const BoundShape s = ellipse_params_alpha2(kA2, critical_distance(kA2));
  EXPECT_NEAR(s.rho, 0.0, 1e-7);
  EXPECT_NEAR(s.lambda, 2.6642135623730950, 1e-6);
  EXPECT_NEAR(s.gamma, 1.75, 1e-6);
  EXPECT_NEAR(*s.a, 0.34314575050761980, 1e-6);
  EXPECT_NEAR(bound_ratio_alpha2(s), 1.0221621690587877, 1e-7);
}

TEST(EllipseAlpha2, ValuesAtHalfCorrelation) {
  const BoundShape s = ellipse_params_alpha2(kA2, distance_for_rho(kA2, 0.5));
  EXPECT_NEAR(s.rho, 0.5, 1e-14);
  EXPECT_NEAR(s.lambda, 4.5594010767585031, 1e-12);
  EXPECT_NEAR(s.gamma, 3.75, 1e-12);
  EXPECT_NEAR(*s.a, 0.17752355257457304, 1e-12);
  EXPECT_NEAR(bound_ratio_alpha2(s), 1.0047781763355815, 1e-12);
}

TEST(EllipseAlpha2, SmallDistanceAsymptotics) {
  for (double d_frac : {1e-2, 1e-3, 1e-4}) {
    const BoundShape s = ellipse_params_alpha2(kA2, d_frac * critical_distance(kA2));
    const double om = one_minus_rho(d_frac, 2.0);
    EXPECT_NEAR(s.lambda * om, 2.0, 2.0 * om + 1e-9);
    EXPECT_NEAR(s.gamma * om, 2.0, om);
  }
}

TEST(EllipseAlpha2, AxisGapAndRatioBound) {
  const double dc = critical_distance(kA2);
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const BoundShape s = ellipse_params_alpha2(kA2, dc * k / 1000.0);
    EXPECT_GE(s.lambda - s.gamma, 0.5 - 1e-9);
    const double ratio = bound_ratio_alpha2(s);
    EXPECT_LE(ratio, 1.0222);
    EXPECT_GE(ratio, prev - 1e-12);
    prev = ratio;
  }
}

TEST(EllipseAlpha2, AreaBoundsBracketNumericRegion) {
  const Scheme df{Strategy::DF, Model::FullDuplex};
  const double dc = critical_distance(kA2);
  for (double frac : {0.3, 0.7, 0.95}) {
    const AreaBounds b = area_bounds_alpha2(kA2, frac * dc);
    const double a = area(region(kA2, df, frac * dc));
    EXPECT_LE(b.lower, a * (1.0 + 1e-6));
    EXPECT_GE(b.upper, a * (1.0 - 1e-6));
  }
}

TEST(EllipseAlpha4, ValuesAtHalfCorrelation) {
  const BoundShape s = ellipse_params_alpha4(kA4, distance_for_rho(kA4, 0.5));
  EXPECT_NEAR(s.lambda, 2.7660230860213233, 1e-12);
  EXPECT_NEAR(s.gamma, 1.75, 1e-12);
  EXPECT_FALSE(s.a.has_value());
}

TEST(EllipseAlpha4, LowerBoundAtHighCorrelation) {
  const double dc = critical_distance(kA4);
  const double d = distance_for_rho(kA4, 0.93);
  const BoundShape s = ellipse_params_alpha4(kA4, d);
  EXPECT_NEAR(s.lambda, 6.0703801319989639, 1e-11);
  EXPECT_NEAR(s.gamma, 5.0952248382484877, 1e-11);
  EXPECT_NEAR(area_lower_alpha4(kA4, d) / (std::numbers::pi * dc * dc), 2.0441713393685316, 1e-11);
}

TEST(EllipseAlpha4, SmallDistanceAsymptotics) {
  for (double d_frac : {1e-2, 1e-3, 1e-4}) {
    const BoundShape s = ellipse_params_alpha4(kA4, d_frac * critical_distance(kA4));
    const double root = std::sqrt(one_minus_rho(d_frac, 4.0));
    EXPECT_NEAR(s.gamma * root, std::numbers::sqrt2, root);
    EXPECT_NEAR(s.lambda * root, std::numbers::sqrt2, 4.0 * root);
  }
}

TEST(EllipseAlpha4, ContinuousAcrossRescaling) {
  const double below = ellipse_params_alpha4(kA4, distance_for_rho(kA4, kQuarticRescaleRho - 1e-9)).lambda;
  const double above = ellipse_params_alpha4(kA4, distance_for_rho(kA4, kQuarticRescaleRho + 1e-9)).lambda;
  EXPECT_NEAR(below / above, 1.0, 1e-7);
}

TEST(BoundaryPoints, ConicAndEllipseAnchors) {
  const double d = distance_for_rho(kA2, 0.5);
  const BoundShape conic = conic_params_alpha2(kA2, d);
  const auto cp = bound_boundary_points(conic, 8);
  EXPECT_NEAR(cp[2].x, 0.5 * d, 1e-12);
  EXPECT_NEAR(cp[2].y, std::sqrt(conic.gamma) * d, 1e-12);
  const BoundShape ell = ellipse_params_alpha2(kA2, d);
  const auto ep = bound_boundary_points(ell, 8);
  EXPECT_NEAR(ep[0].x, 0.5 * d + std::sqrt(ell.lambda) * d, 1e-12);
  EXPECT_NEAR(ep[0].y, 0.0, 1e-15);
  EXPECT_NEAR(ep[2].y, std::sqrt(ell.gamma) * d, 1e-12);
  // The conic meets the ellipse on the major axis.
  EXPECT_NEAR(cp[0].x, ep[0].x, 1e-12);
}

TEST(BoundaryPoints, EllipseInsideConicOutsideDfRegion) {
  const Scheme df{Strategy::DF, Model::FullDuplex};
  for (const ChannelParams& p : {kA2, kA4}) {
    const double d = 0.5 * critical_distance(p);
    const BoundShape ell = p.alpha == 2.0 ? ellipse_params_alpha2(p, d) : ellipse_params_alpha4(p, d);
    for (const Point& pt : bound_boundary_points(ell, 64)) {
      const auto [r, th] = to_polar(pt);
      EXPECT_GE(evaluate(p, df, {d, r * (1.0 - 1e-9), th}).rate, p.rate - 1e-12);
    }
    if (p.alpha != 2.0) continue;
    for (const Point& pt : bound_boundary_points(conic_params_alpha2(p, d), 64)) {
      const auto [r, th] = to_polar({pt.x, pt.y});
      EXPECT_LE(evaluate(p, df, {d, r * (1.0 + 1e-9), th}).rate, p.rate + 1e-12);
    }
  }
}

TEST(Preconditions, Rejected) {
  const double dc = critical_distance(kA2);
  EXPECT_THROW(ellipse_params_alpha2({10.0, 5.0, 2.0, 1.0}, 0.5), PreconditionError);
  EXPECT_THROW(ellipse_params_alpha2(kA4, 0.5), PreconditionError);
  EXPECT_THROW(ellipse_params_alpha4(kA2, 0.5), PreconditionError);
  EXPECT_THROW(ellipse_params_alpha2(kA2, 1.01 * dc), PreconditionError);
  EXPECT_THROW(ellipse_params_alpha2(kA2, 0.0), PreconditionError);
  EXPECT_THROW(distance_for_rho(kA2, 1.0), PreconditionError);
}

TEST(DistanceForRho, RoundTrip) {
  for (double rho : {0.0, 0.2, 0.93, 0.999}) {
    EXPECT_NEAR(ellipse_params_alpha2(kA2, distance_for_rho(kA2, rho)).rho, rho, 1e-12);
    EXPECT_NEAR(ellipse_params_alpha4(kA4, distance_for_rho(kA4, rho)).rho, rho, 1e-12);
  }
}

}  // namespace
}  // namespace relaycov

// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"

namespace relaycov {
namespace {

const ChannelParams kRate3{10.0, 10.0, 3.52, 3.0};
const ChannelParams kRate4{10.0, 10.0, 3.52, 4.0};
const Scheme kDf{Strategy::DF, Model::FullDuplex};
const Scheme kCf{Strategy::CF, Model::FullDuplex};
const Scheme kNr{Strategy::NR, Model::FullDuplex};

TEST(BoundaryRadius, DirectLinkIsCriticalDistance) {
  const double dc = critical_distance(kRate3);
  for (double th : {-3.0, -1.0, 0.0, 0.5, 2.9}) {
    EXPECT_NEAR(boundary_radius(kRate3, kNr, 0.7, th), dc, 1e-9);
  }
}

TEST(BoundaryRadius, DfReachesCriticalDistance) {
  const double dc = critical_distance(kRate3);
  for (double frac : {0.1, 0.5, 0.9, 1.0}) {
    for (double th : {-2.5, 0.0, 1.0, 3.0}) {
      EXPECT_GE(boundary_radius(kRate3, kDf, frac * dc, th), dc - 1e-9);
    }
  }
}

TEST(BoundaryRadius, DfEmptyBeyondCriticalDistance) {
  const double dc = critical_distance(kRate4);
  for (double th : {-2.5, 0.0, 1.0}) EXPECT_EQ(boundary_radius(kRate4, kDf, 1.2 * dc, th), 0.0);
  const CoverageRegion reg = region(kRate4, kDf, 1.1 * dc, 64);
  EXPECT_TRUE(reg.empty);
  EXPECT_EQ(area(reg), 0.0);
}

TEST(BoundaryRadius, RejectsRayleighAndBadTolerance) {
  EXPECT_THROW(boundary_radius(kRate3, {Strategy::DF, Model::Rayleigh}, 1.0, 0.0), PreconditionError);
  EXPECT_THROW(boundary_radius(kRate3, kDf, 1.0, 0.0, 0.0), PreconditionError);
  EXPECT_THROW(region(kRate3, kDf, 1.0, 15), PreconditionError);
  EXPECT_THROW(region(kRate3, kDf, 1.0, 18 + 1), PreconditionError);
}

TEST(SearchRay, BisectionFailureIsNumeric) {
  RaySearchOptions opt;
  opt.max_bisections = 3;
  auto covered = [](double x) { return x <= 1.2345; };
  EXPECT_THROW(search_ray(covered, 1.0, opt), NumericError);
}

TEST(SearchRay, FlagsHolesAndFindsOuterCell) {
  RaySearchOptions opt;
  opt.tol = 1e-12;
  // Covered on [0, 0.2] and [0.5, 0.7] with the relay point at 1 uncovered.
  auto covered = [](double x) { return x <= 0.2 || (x >= 0.5 && x <= 0.7); };
  const RayBoundary r = search_ray(covered, 1.0, opt);
  EXPECT_NEAR(r.radius, 0.7, 1e-11);
  EXPECT_TRUE(r.non_star);
  auto nowhere = [](double) { return false; };
  EXPECT_EQ(search_ray(nowhere, 1.0, opt).radius, 0.0);
}

TEST(Region, DirectLinkDisk) {
  const CoverageRegion reg = region(kRate3, kNr, 0.4);
  const double dc = critical_distance(kRate3);
  for (double r : reg.radii) EXPECT_NEAR(r, dc, 1e-9);
  EXPECT_NEAR(area(reg) / (std::numbers::pi * dc * dc), 1.0, 1e-6);
  EXPECT_TRUE(reg.non_star_thetas.empty());
}

TEST(Region, SymmetricAboutRelayAxis) {
  for (const Scheme s : {kDf, kCf, Scheme{Strategy::DF, Model::HalfDuplex, 0.5}, Scheme{Strategy::UB, Model::PhaseFading}}) {
    const CoverageRegion reg = region(kRate3, s, 0.8, 360);
    for (std::size_t k = 0; k < reg.radii.size(); ++k) {
      EXPECT_NEAR(reg.radii[k], reg.radii[mirror_index(k, reg.radii.size())], 2e-9) << scheme_name(s);
    }
  }
}

TEST(Region, OrderingBelowCriticalDistance) {
  const double dc = critical_distance(kRate3);
  for (double frac : {0.5, 0.9, 1.0}) {
    const auto df = region(kRate3, kDf, frac * dc);
    const auto cf = region(kRate3, kCf, frac * dc);
    const auto nr = region(kRate3, kNr, frac * dc);
    EXPECT_TRUE(contains(df, cf));
    EXPECT_TRUE(contains(cf, nr));
    EXPECT_TRUE(contains(df, df));
    EXPECT_TRUE(contains(df, nr));
  }
}

TEST(Region, OrderingBeyondCriticalDistance) {
  const double dc = critical_distance(kRate4);
  const auto df = region(kRate4, kDf, 1.5 * dc);
  const auto cf = region(kRate4, kCf, 1.5 * dc);
  const auto nr = region(kRate4, kNr, 1.5 * dc);
  EXPECT_TRUE(df.empty);
  EXPECT_TRUE(contains(cf, nr));
  EXPECT_TRUE(contains(nr, df));
  EXPECT_FALSE(contains(df, nr));
}

TEST(Region, ContainmentNeedsSameGrid) {
  EXPECT_THROW(contains(region(kRate3, kNr, 0.5, 16), region(kRate3, kNr, 0.5, 32)), PreconditionError);
}

TEST(Region, RefinementStability) {
  for (const Scheme s : {kDf, kCf}) {
    const double a1 = area(region(kRate3, s, 0.7, 360));
    const double a2 = area(region(kRate3, s, 0.7, 720));
    EXPECT_NEAR(a1 / a2, 1.0, 1e-4) << scheme_name(s);
  }
}

TEST(Region, ThreadCountDoesNotChangeResult) {
  const auto a = region(kRate3, kCf, 0.6, 128, kDefaultBoundaryTol, 1);
  const auto b = region(kRate3, kCf, 0.6, 128, kDefaultBoundaryTol, 4);
  EXPECT_EQ(a.radii, b.radii);
}

TEST(Area, CoherentLimitAlpha2) {
  const ChannelParams p{10.0, 10.0, 2.0, 1.0};
  const double dc = critical_distance(p);
  const double a = area(region(p, kDf, dc * 1e-4));
  EXPECT_NEAR(a / (4.0 * std::numbers::pi * dc * dc), 1.0, 1e-3);
}

TEST(Area, CoherentLimitAlpha4) {
  const ChannelParams p{100.0, 100.0, 4.0, 1.0};
  const double dc = critical_distance(p);
  const double a = area(region(p, kDf, dc * 1e-4));
  EXPECT_NEAR(a / (2.0 * std::numbers::pi * dc * dc), 1.0, 1e-3);
}

// Along each ray the rate does not increase beyond the relay distance, so the
// doubling bracket is valid.
TEST(SearchPrecondition, RateNonIncreasingPastRelay) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> logp(-1.0, 2.0);
  std::uniform_real_distribution<double> ua(2.0, 5.0);
  std::uniform_real_distribution<double> ud(0.05, 3.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const ChannelParams p{std::pow(10.0, logp(gen)), std::pow(10.0, logp(gen)), ua(gen), 1.0};
    const double d = ud(gen);
    const double th = ang(gen);
    for (const Scheme s : {kDf, kCf, kNr}) {
      double prev = evaluate(p, s, {d, d, th}).rate;
      for (int k = 1; k <= 2000; ++k) {
        const double r = evaluate(p, s, {d, d * (1.0 + 0.005 * k), th}).rate;
        ASSERT_LE(r, prev + 1e-12 * std::max(1.0, prev));
        prev = r;
      }
    }
  }
}

TEST(Region, ReportsPointsOnBoundary) {
  const CoverageRegion reg = region(kRate3, kNr, 0.5, 16);
  const auto pts = boundary_points(reg);
  ASSERT_EQ(pts.size(), 16u);
  const double dc = critical_distance(kRate3);
  EXPECT_NEAR(pts[0].x, -dc, 1e-9);
  EXPECT_NEAR(std::hypot(pts[3].x, pts[3].y), dc, 1e-9);
}

}  // namespace
}  // namespace relaycov

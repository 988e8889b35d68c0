// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "relaycov/error.hpp"

namespace relaycov {

/// Transmit powers, path-loss exponent and target rate of the three-node
/// relay channel. Powers are linear and normalized to unit noise variance;
/// the rate is in bits per channel use.
struct ChannelParams {
  double p1 = 1.0;     ///< source power, > 0
  double p2 = 1.0;     ///< relay power, >= 0
  double alpha = 2.0;  ///< path-loss exponent, >= 2
  double rate = 1.0;   ///< target rate R, > 0
};

inline void validate(const ChannelParams& params) {
  using detail::require;
  require(std::isfinite(params.p1) && params.p1 > 0.0, "p1 must be finite and > 0");
  require(std::isfinite(params.p2) && params.p2 >= 0.0, "p2 must be finite and >= 0");
  require(std::isfinite(params.alpha) && params.alpha >= 2.0, "alpha must be finite and >= 2");
  require(std::isfinite(params.rate) && params.rate > 0.0, "rate must be finite and > 0");
}

/// Source at the origin, relay at (d, 0), destination at polar (x, theta).
struct Layout {
  double d = 1.0;
  double x = 1.0;
  double theta = 0.0;
};

struct Distances {
  double d12 = 0.0;  ///< source to relay
  double d13 = 0.0;  ///< source to destination
  double d23 = 0.0;  ///< relay to destination
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Distances below this are clamped before exponentiation, so co-located
/// nodes give large but finite gains.
inline constexpr double kDistanceGuard = 1e-9;

inline Distances distances(const Layout& layout) {
  using detail::require;
  require(std::isfinite(layout.d) && std::isfinite(layout.x) && std::isfinite(layout.theta),
          "layout must be finite");
  require(layout.d > 0.0, "relay distance d must be > 0");
  require(layout.x >= 0.0, "destination distance x must be >= 0");
  // Cosine rule written as (d - x)^2 + 4 d x sin^2(theta/2): no cancellation
  // when the destination sits next to the relay, and exactly even in theta.
  const double half = std::sin(0.5 * layout.theta);
  const double gap = layout.d - layout.x;
  const double d23sq = gap * gap + 4.0 * layout.d * layout.x * half * half;
  return {layout.d, layout.x, std::sqrt(d23sq)};
}

/// Power attenuation 1/dist^alpha with the co-location guard applied.
inline double gain(double dist, double alpha) {
  const double clamped = dist < kDistanceGuard ? kDistanceGuard : dist;
  return std::pow(clamped, -alpha);
}

inline Point destination_point(const Layout& layout) {
  return {layout.x * std::cos(layout.theta), layout.x * std::sin(layout.theta)};
}

/// Polar coordinates (radius, angle in [-pi, pi]) of a point about the source.
inline std::pair<double, double> to_polar(Point p) {
  return {std::hypot(p.x, p.y), std::atan2(p.y, p.x)};
}

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(theta, two_pi);
  if (wrapped < -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

/// Rescaling to unit source power: (p1, p2) -> (1, p2/p1) with every position
/// scaled by p1^(-1/alpha). All rate expressions are invariant under it.
struct Normalized {
  ChannelParams params;
  Layout layout;
  double length_scale = 1.0;  ///< factor applied to positions
};

inline Normalized normalize(const ChannelParams& params, const Layout& layout) {
  validate(params);
  const double scale = std::pow(params.p1, -1.0 / params.alpha);
  Normalized out;
  out.params = params;
  out.params.p1 = 1.0;
  out.params.p2 = params.p2 / params.p1;
  out.layout = {layout.d * scale, layout.x * scale, layout.theta};
  out.length_scale = scale;
  return out;
}

}  // namespace relaycov

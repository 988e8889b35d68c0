// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "relaycov/error.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/quartic.hpp"
#include "relaycov/rates.hpp"

namespace relaycov {

enum class BoundKind { EllipseInner, ConicOuter };

inline std::string_view to_string(BoundKind k) {
  return k == BoundKind::EllipseInner ? "ellipse-inner" : "conic-outer";
}

/// Shape parameters of the DF area bounds for equal source and relay powers.
/// Lengths are in units of the relay distance d: the inner ellipse has centre
/// (d/2, 0) and semi-axes sqrt(lambda) d and sqrt(gamma) d.
struct BoundShape {
  double rho = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::optional<double> a;  ///< conic parameter 1 - gamma/lambda (alpha = 2 only)
  double d = 0.0;
  double alpha = 2.0;
  BoundKind kind = BoundKind::EllipseInner;
};

struct AreaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Above this correlation the lambda quartic is solved in rescaled
/// coordinates where its coefficients stay bounded.
inline constexpr double kQuarticRescaleRho = 0.99;

namespace detail {

inline void require_bound_preconditions(const ChannelParams& params, double d, double alpha) {
  validate(params);
  require(std::abs(params.p1 - params.p2) <= 1e-12 * params.p1, "area bounds require p1 == p2");
  require(std::abs(params.alpha - alpha) <= 1e-12, alpha == 2.0 ? "this bound requires alpha == 2"
                                                                 : "this bound requires alpha == 4");
  const double dc = critical_distance(params);
  require(d > 0.0 && d <= dc * (1.0 + 1e-12), "area bounds require 0 < d <= d_c");
}

// (d/d_c)^alpha clamped to [0, 1] together with rho = sqrt(1 - q) and
// 1 - rho = q / (1 + rho), which stays accurate as d -> 0.
struct RhoTerms {
  double q, rho, one_minus;
};

inline RhoTerms rho_terms(const ChannelParams& params, double d) {
  const double q = std::min(1.0, std::pow(d / critical_distance(params), params.alpha));
  const double rho = std::sqrt(1.0 - q);
  return {q, rho, q / (1.0 + rho)};
}

}  // namespace detail

/// Inner-ellipse / outer-conic parameters for alpha = 2.
inline BoundShape ellipse_params_alpha2(const ChannelParams& params, double d) {
  detail::require_bound_preconditions(params, d, 2.0);
  const auto [q, rho, one_minus] = detail::rho_terms(params, d);
  BoundShape s;
  s.rho = rho;
  s.lambda = 0.25 + 1.0 / one_minus + std::sqrt(2.0 * (1.0 + rho)) / q;
  s.gamma = 2.0 / one_minus - 0.25;
  s.a = 1.0 - s.gamma / s.lambda;
  s.d = d;
  s.alpha = 2.0;
  s.kind = BoundKind::EllipseInner;
  return s;
}

inline BoundShape conic_params_alpha2(const ChannelParams& params, double d) {
  BoundShape s = ellipse_params_alpha2(params, d);
  s.kind = BoundKind::ConicOuter;
  return s;
}

/// Upper-to-lower bound ratio (1 - a/2)/sqrt(1 - a).
inline double bound_ratio_alpha2(const BoundShape& s) {
  const double a = s.a.value_or(0.0);
  return (1.0 - 0.5 * a) / std::sqrt(1.0 - a);
}

inline AreaBounds area_bounds_alpha2(const ChannelParams& params, double d) {
  const BoundShape s = ellipse_params_alpha2(params, d);
  const double lower = std::numbers::pi * std::sqrt(s.lambda * s.gamma) * d * d;
  return {lower, lower * bound_ratio_alpha2(s)};
}

/// Inner-ellipse parameters for alpha = 4; lambda - 1/4 is the largest real
/// root y of y^4 - 2/(1-rho) y^2 - 4/(1-rho^2) y - 1/(1-rho^2).
inline BoundShape ellipse_params_alpha4(const ChannelParams& params, double d) {
  detail::require_bound_preconditions(params, d, 4.0);
  const auto [q, rho, one_minus] = detail::rho_terms(params, d);
  BoundShape s;
  s.rho = rho;
  s.gamma = std::sqrt(2.0 / one_minus) - 0.25;
  double y = 0.0;
  if (rho <= kQuarticRescaleRho) {
    y = ferrari_quartic_largest_root(0.0, -2.0 / one_minus, -4.0 / q, -1.0 / q);
  } else {
    // With y = psi / sqrt(1 - rho): psi^4 - 2 psi^2 - 4 sqrt(1-rho)/(1+rho) psi
    // - (1-rho)/(1+rho) = 0, whose largest root tends to sqrt(2).
    const double root = std::sqrt(one_minus);
    const double psi = ferrari_quartic_largest_root(0.0, -2.0, -4.0 * root / (1.0 + rho), -one_minus / (1.0 + rho));
    y = psi / root;
  }
  s.lambda = 0.25 + y;
  s.d = d;
  s.alpha = 4.0;
  s.kind = BoundKind::EllipseInner;
  return s;
}

inline double area_lower_alpha4(const ChannelParams& params, double d) {
  const BoundShape s = ellipse_params_alpha4(params, d);
  return std::numbers::pi * std::sqrt(s.lambda * s.gamma) * d * d;
}

/// Relay distance that produces a given correlation rho: d = d_c (1 - rho^2)^(1/alpha).
inline double distance_for_rho(const ChannelParams& params, double rho) {
  detail::require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  return critical_distance(params) * std::pow(1.0 - rho * rho, 1.0 / params.alpha);
}

/// n samples of the bound's boundary, angle 2 pi k / n about the ellipse centre.
inline std::vector<Point> bound_boundary_points(const BoundShape& shape, std::size_t n) {
  detail::require(n >= 8, "need at least 8 boundary points");
  const double major = std::sqrt(shape.lambda) * shape.d;
  const double minor = std::sqrt(shape.gamma) * shape.d;
  const double a = shape.a.value_or(0.0);
  detail::require(shape.kind == BoundKind::EllipseInner || shape.a.has_value(),
                  "the outer conic needs the parameter a");
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double c = std::cos(th);
    const double sn = std::sin(th);
    if (shape.kind == BoundKind::EllipseInner) {
      pts.push_back({0.5 * shape.d + major * c, minor * sn});
    } else {
      const double w = std::sqrt(1.0 - a * sn * sn);
      pts.push_back({0.5 * shape.d + major * c * w, minor * sn * w / std::sqrt(1.0 - a)});
    }
  }
  return pts;
}

}  // namespace relaycov

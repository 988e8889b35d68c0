// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "relaycov/error.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/parallel.hpp"
#include "relaycov/rates.hpp"

namespace relaycov {

inline constexpr double kDefaultBoundaryTol = 1e-9;
inline constexpr std::size_t kDefaultThetaCount = 720;

/// Controls the search for the outer boundary along a single ray.
struct RaySearchOptions {
  double tol = kDefaultBoundaryTol;  ///< bisection stops at this bracket width
  int max_bisections = 200;
  /// Grid used below the relay distance, where the rate need not be monotone.
  std::size_t interior_samples = 256;
  /// Also probe x < d when the relay point is covered, to flag holes.
  bool scan_interior = true;
  double max_radius = std::numeric_limits<double>::infinity();
};

struct RayBoundary {
  double radius = 0.0;
  bool non_star = false;   ///< an uncovered point was seen inside the radius
  bool saturated = false;  ///< the bracket hit max_radius while still covered
};

namespace detail {

template <class Covered>
double bisect_boundary(Covered& covered, double lo, double hi, const RaySearchOptions& opt) {
  // Invariant: covered(lo), !covered(hi).
  for (int i = 0; i < opt.max_bisections; ++i) {
    if (hi - lo <= opt.tol) return lo;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return lo;
    if (covered(mid)) lo = mid;
    else hi = mid;
  }
  if (hi - lo <= opt.tol) return lo;
  throw NumericError("boundary bisection did not converge");
}

}  // namespace detail

/// Outer boundary of the covered set {x : covered(x)} along one ray.
///
/// For x >= d every implemented rate is non-increasing in x (both d13 and d23
/// grow), so when the relay point is covered the boundary is bracketed by
/// doubling from x = d and then bisected. Otherwise the covered set lies in
/// [0, d) and the search falls back to a uniform scan of that interval before
/// bisecting the outermost covered cell.
template <class Covered>
RayBoundary search_ray(Covered&& covered, double d, const RaySearchOptions& opt) {
  detail::require(opt.tol > 0.0, "boundary tolerance must be > 0");
  detail::require(d > 0.0, "relay distance d must be > 0");
  const std::size_t k_max = std::max<std::size_t>(opt.interior_samples, 2);
  auto grid = [&](std::size_t k) { return d * static_cast<double>(k) / static_cast<double>(k_max); };

  RayBoundary out;
  if (covered(d)) {
    double lo = d;
    double hi = 2.0 * d;
    while (covered(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > opt.max_radius) {
        out.radius = opt.max_radius;
        out.saturated = true;
        return out;
      }
    }
    out.radius = detail::bisect_boundary(covered, lo, hi, opt);
    if (opt.scan_interior) {
      for (std::size_t k = 1; k < k_max && !out.non_star; ++k) out.non_star = !covered(grid(k));
    }
    return out;
  }

  std::size_t top = 0;  // largest k with covered(grid(k)), 0 if none
  for (std::size_t k = k_max - 1; k >= 1; --k) {
    if (covered(grid(k))) {
      top = k;
      break;
    }
  }
  double lo = 0.0;
  if (top == 0) {
    if (!covered(kDistanceGuard)) return out;
    lo = kDistanceGuard;
  } else {
    lo = grid(top);
    for (std::size_t k = 1; k < top && !out.non_star; ++k) out.non_star = !covered(grid(k));
  }
  out.radius = detail::bisect_boundary(covered, lo, grid(top + 1), opt);
  return out;
}

/// Boundary x_S(theta) of a region sampled on an angle grid. Radii of zero
/// mark rays with no coverage at all.
struct CoverageRegion {
  ChannelParams params;
  Scheme scheme;
  double d = 1.0;
  double tol = kDefaultBoundaryTol;
  std::vector<double> thetas;
  std::vector<double> radii;
  bool empty = true;
  /// Angles at which the covered set along the ray was not an interval.
  std::vector<double> non_star_thetas;
};

/// Uniform grid of n angles over [-pi, pi). Angle k mirrors angle (n - k) mod n.
inline std::vector<double> theta_grid(std::size_t n) {
  std::vector<double> thetas(n);
  for (std::size_t k = 0; k < n; ++k) {
    thetas[k] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  }
  return thetas;
}

inline std::size_t mirror_index(std::size_t k, std::size_t n) { return (n - k) % n; }

namespace detail {

inline void require_deterministic(const Scheme& scheme) {
  validate(scheme);
  require(scheme.model != Model::Rayleigh,
          "Rayleigh regions are outage regions; use outage_region instead");
}

// DF (full-duplex or phase fading) cannot reach R anywhere once the relay
// itself is out of decoding range.
inline bool df_relay_out_of_range(const ChannelParams& params, const Scheme& scheme, double d) {
  if (scheme.strategy != Strategy::DF) return false;
  if (scheme.model != Model::FullDuplex && scheme.model != Model::PhaseFading) return false;
  return !meets_rate(log2_1p(params.p1 * gain(d, params.alpha)), params.rate);
}

inline double default_max_radius(const ChannelParams& params, double d) {
  return 1e4 * std::max(d, critical_distance(params));
}

}  // namespace detail

inline RayBoundary boundary_ray(const ChannelParams& params, const Scheme& scheme, double d,
                                double theta, double tol = kDefaultBoundaryTol) {
  validate(params);
  detail::require_deterministic(scheme);
  detail::require(tol > 0.0, "boundary tolerance must be > 0");
  detail::require(d > 0.0 && std::isfinite(d), "relay distance d must be finite and > 0");
  if (detail::df_relay_out_of_range(params, scheme, d)) return {};
  RaySearchOptions opt;
  opt.tol = tol;
  opt.max_radius = detail::default_max_radius(params, d);
  auto covered = [&](double x) {
    return meets_rate(evaluate(params, scheme, Layout{d, x, theta}).rate, params.rate);
  };
  return search_ray(covered, d, opt);
}

/// Largest x along the ray at angle theta whose rate meets the target.
inline double boundary_radius(const ChannelParams& params, const Scheme& scheme, double d,
                              double theta, double tol = kDefaultBoundaryTol) {
  return boundary_ray(params, scheme, d, theta, tol).radius;
}

inline CoverageRegion region(const ChannelParams& params, const Scheme& scheme, double d,
                             std::size_t n_theta = kDefaultThetaCount, double tol = kDefaultBoundaryTol,
                             unsigned threads = 0) {
  validate(params);
  detail::require_deterministic(scheme);
  detail::require(n_theta >= 16 && n_theta % 2 == 0, "n_theta must be even and >= 16");
  CoverageRegion out;
  out.params = params;
  out.scheme = scheme;
  out.d = d;
  out.tol = tol;
  out.thetas = theta_grid(n_theta);
  out.radii.assign(n_theta, 0.0);
  std::vector<char> non_star(n_theta, 0);
  if (!detail::df_relay_out_of_range(params, scheme, d)) {
    parallel_for(n_theta, threads, [&](std::size_t k) {
      try {
        const RayBoundary ray = boundary_ray(params, scheme, d, out.thetas[k], tol);
        out.radii[k] = ray.radius;
        non_star[k] = ray.non_star ? 1 : 0;
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " at theta=" + std::to_string(out.thetas[k]));
      }
    });
  }
  for (std::size_t k = 0; k < n_theta; ++k) {
    if (non_star[k]) out.non_star_thetas.push_back(out.thetas[k]);
  }
  out.empty = std::all_of(out.radii.begin(), out.radii.end(), [](double r) { return r <= 0.0; });
  return out;
}

/// Region area 1/2 * integral of x(theta)^2 by periodic composite Simpson.
inline double area(const CoverageRegion& reg) {
  if (reg.empty || reg.radii.empty()) return 0.0;
  const std::size_t n = reg.radii.size();
  detail::require(n % 2 == 0, "area needs an even number of angles");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    detail::require(std::isfinite(reg.radii[k]), "region radii must be finite");
    sum += (k % 2 == 0 ? 2.0 : 4.0) * reg.radii[k] * reg.radii[k];
  }
  return 0.5 * h / 3.0 * sum;
}

/// Smallest outer - inner radius difference; negative where inner pokes out.
inline double containment_margin(const CoverageRegion& outer, const CoverageRegion& inner) {
  detail::require(outer.thetas.size() == inner.thetas.size(), "regions use different angle grids");
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < outer.thetas.size(); ++k) {
    detail::require(std::abs(outer.thetas[k] - inner.thetas[k]) <= 1e-12, "regions use different angle grids");
    margin = std::min(margin, outer.radii[k] - inner.radii[k]);
  }
  return margin;
}

inline bool contains(const CoverageRegion& outer, const CoverageRegion& inner, double slack) {
  return containment_margin(outer, inner) >= -slack;
}

inline bool contains(const CoverageRegion& outer, const CoverageRegion& inner) {
  return contains(outer, inner, 2.0 * std::max(outer.tol, inner.tol));
}

/// Closed boundary polyline of a region in Cartesian coordinates.
inline std::vector<Point> boundary_points(const CoverageRegion& reg) {
  std::vector<Point> pts;
  pts.reserve(reg.thetas.size());
  for (std::size_t k = 0; k < reg.thetas.size(); ++k) {
    pts.push_back({reg.radii[k] * std::cos(reg.thetas[k]), reg.radii[k] * std::sin(reg.thetas[k])});
  }
  return pts;
}

}  // namespace relaycov

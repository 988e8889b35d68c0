// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "relaycov/error.hpp"

namespace relaycov {

/// Real roots of x^2 + b x + c = 0, ascending.
inline std::vector<double> quadratic_real_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return {};
  // Avoid cancellation: q = -(b + sign(b) sqrt(disc)) / 2, roots q and c/q.
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  std::vector<double> roots;
  if (q != 0.0) {
    roots = {q, c / q};
  } else {
    roots = {0.0, 0.0};
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Largest real root of the monic cubic x^3 + b x^2 + c x + d.
inline double cubic_largest_root(double b, double c, double d) {
  // Depressed form t^3 + p t + q with x = t - b/3.
  const double shift = b / 3.0;
  const double p = c - b * shift;
  const double q = 2.0 * shift * shift * shift - c * shift + d;
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  double t = 0.0;
  if (disc > 0.0) {
    // One real root (Cardano), written to avoid subtracting nearly equal terms.
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    t = u == 0.0 ? 0.0 : u - third_p / u;
  } else if (p < 0.0) {
    const double r = std::sqrt(-third_p);
    const double cos_phi = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
    t = 2.0 * r * std::cos(std::acos(cos_phi) / 3.0);
  }
  double x = t - shift;
  for (int i = 0; i < 2; ++i) {
    const double f = ((x + b) * x + c) * x + d;
    const double df = (3.0 * x + 2.0 * b) * x + c;
    if (df == 0.0) break;
    const double next = x - f / df;
    if (!std::isfinite(next) || std::abs(((next + b) * next + c) * next + d) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

/// Value of the monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
inline double quartic_value(double x, double c3, double c2, double c1, double c0) {
  return (((x + c3) * x + c2) * x + c1) * x + c0;
}

/// All real roots of the monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0,
/// ascending, by Ferrari's method: the depressed quartic is split into two
/// quadratics using a root of its resolvent cubic.
inline std::vector<double> ferrari_quartic_real_roots(double c3, double c2, double c1, double c0) {
  const double shift = c3 / 4.0;
  const double s2 = shift * shift;
  // y^4 + p y^2 + q y + r with x = y - c3/4.
  const double p = c2 - 6.0 * s2;
  const double q = c1 - 2.0 * c2 * shift + 8.0 * s2 * shift;
  const double r = c0 - c1 * shift + c2 * s2 - 3.0 * s2 * s2;

  std::vector<double> ys;
  // Resolvent m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0; its largest root m
  // makes (y^2 + p/2 + m)^2 = (sqrt(2m) y - q/(2 sqrt(2m)))^2.
  const double m = cubic_largest_root(p, 0.25 * p * p - r, -0.125 * q * q);
  const double scale = std::max({1.0, std::abs(p), std::abs(q), std::abs(r)});
  if (m > 1e-14 * scale) {
    const double s = std::sqrt(2.0 * m);
    const double k = q / (2.0 * s);
    for (double root : quadratic_real_roots(-s, 0.5 * p + m + k)) ys.push_back(root);
    for (double root : quadratic_real_roots(s, 0.5 * p + m - k)) ys.push_back(root);
  } else {
    // q ~ 0: biquadratic z^2 + p z + r with z = y^2.
    for (double z : quadratic_real_roots(p, r)) {
      if (z >= 0.0) {
        ys.push_back(std::sqrt(z));
        ys.push_back(-std::sqrt(z));
      } else if (z > -1e-12 * scale) {
        ys.push_back(0.0);
      }
    }
  }
  std::vector<double> xs;
  xs.reserve(ys.size());
  for (double y : ys) xs.push_back(y - shift);
  std::sort(xs.begin(), xs.end());
  return xs;
}

/// Largest real root of x^4 + c3 x^3 + c2 x^2 + c1 x + c0, polished by a
/// Newton step (closed-form quartic roots lose about half of the digits).
inline double ferrari_quartic_largest_root(double c3, double c2, double c1, double c0) {
  const std::vector<double> roots = ferrari_quartic_real_roots(c3, c2, c1, c0);
  if (roots.empty()) throw NumericError("quartic has no real root");
  double x = roots.back();
  const double f = quartic_value(x, c3, c2, c1, c0);
  const double df = ((4.0 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1;
  if (df != 0.0) {
    const double next = x - f / df;
    if (std::isfinite(next) && std::abs(quartic_value(next, c3, c2, c1, c0)) <= std::abs(f)) x = next;
  }
  return x;
}

}  // namespace relaycov

// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relaycov/analytic_bounds.hpp"
#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"
#include "relaycov/fading_mc.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/io_format.hpp"
#include "relaycov/parallel.hpp"
#include "relaycov/rates.hpp"

namespace relaycov {

enum class Verdict { Pass, Fail, Inconclusive, PreconditionNotMet };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::PreconditionNotMet: return "precondition-not-met";
  }
  return "?";
}

/// One sampled check. Soft cases are informational and never affect the verdict.
struct CaseResult {
  std::string label;
  bool pass = false;
  double margin = 0.0;  ///< worst-case slack; negative means violated
  std::string unit;     ///< "length", "rate", "area" or "ratio"
  bool hard = true;
  std::string note;
};

struct TheoremReport {
  std::string theorem_id;
  ChannelParams params;
  std::size_t n_theta = 0;
  double tol = 0.0;
  std::vector<CaseResult> cases;
  /// Named scalar findings, such as a witness location.
  std::vector<std::pair<std::string, double>> values;
  Verdict verdict = Verdict::Pass;
};

struct SuiteOptions {
  std::size_t n_theta = kDefaultThetaCount;
  double tol = kDefaultBoundaryTol;
  unsigned threads = 0;
};

namespace detail {

inline TheoremReport start_report(std::string id, const ChannelParams& params, const SuiteOptions& opt) {
  TheoremReport r;
  r.theorem_id = std::move(id);
  r.params = params;
  r.n_theta = opt.n_theta;
  r.tol = opt.tol;
  return r;
}

inline void add_case(TheoremReport& r, std::string label, double margin, std::string unit, bool hard = true,
                     std::string note = {}) {
  r.cases.push_back({std::move(label), margin >= 0.0, margin, std::move(unit), hard, std::move(note)});
}

inline void finalize(TheoremReport& r) {
  if (r.verdict == Verdict::PreconditionNotMet || r.verdict == Verdict::Inconclusive) return;
  const bool ok = std::all_of(r.cases.begin(), r.cases.end(), [](const CaseResult& c) { return !c.hard || c.pass; });
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
}

inline std::string at_d(double d, double dc) {
  return "d=" + format_number(d / dc, 6) + "*d_c";
}

// Containment check with the suite slack: margin >= 0 iff outer covers inner
// to within 2 tol at every angle.
inline double containment_slack_margin(const CoverageRegion& outer, const CoverageRegion& inner, double tol) {
  return containment_margin(outer, inner) + 2.0 * tol;
}

inline double max_radius(const CoverageRegion& reg) {
  return reg.radii.empty() ? 0.0 : *std::max_element(reg.radii.begin(), reg.radii.end());
}

}  // namespace detail

/// DF region contains CF contains NR when d <= d_c; otherwise DF is empty
/// and CF contains NR.
inline TheoremReport verify_theorem1(const ChannelParams& params, const std::vector<double>& d_list,
                                     const SuiteOptions& opt = {}) {
  validate(params);
  detail::require(!d_list.empty(), "d_list must not be empty");
  TheoremReport r = detail::start_report("theorem1", params, opt);
  const double dc = critical_distance(params);
  for (double d : d_list) {
    const auto df = region(params, {Strategy::DF, Model::FullDuplex}, d, opt.n_theta, opt.tol, opt.threads);
    const auto cf = region(params, {Strategy::CF, Model::FullDuplex}, d, opt.n_theta, opt.tol, opt.threads);
    const auto nr = region(params, {Strategy::NR, Model::FullDuplex}, d, opt.n_theta, opt.tol, opt.threads);
    const std::string tag = detail::at_d(d, dc);
    if (d <= dc) {
      detail::add_case(r, tag + ": DF contains CF", detail::containment_slack_margin(df, cf, opt.tol), "length");
      detail::add_case(r, tag + ": CF contains NR", detail::containment_slack_margin(cf, nr, opt.tol), "length");
    } else {
      detail::add_case(r, tag + ": CF contains NR", detail::containment_slack_margin(cf, nr, opt.tol), "length");
      detail::add_case(r, tag + ": NR contains DF", detail::containment_slack_margin(nr, df, opt.tol), "length");
      detail::add_case(r, tag + ": DF region empty", df.empty ? 0.0 : -detail::max_radius(df), "length");
    }
  }
  detail::finalize(r);
  return r;
}

/// Left side of the sufficient relay-power inequality q (q + 2)(q + 1) >= 1/4
/// at normalized relay power q = P2 / P1.
inline double relay_power_condition(double q) { return q * (q + 2.0) * (q + 1.0); }

/// For alpha = 2 and enough relay power, every CF region with d > d_c lies
/// inside the DF region at d = d_c.
inline TheoremReport verify_theorem2_part1(const ChannelParams& params, const std::vector<double>& d_list,
                                           const SuiteOptions& opt = {}) {
  validate(params);
  detail::require(std::abs(params.alpha - 2.0) <= 1e-12, "this suite requires alpha == 2");
  detail::require(!d_list.empty(), "d_list must not be empty");
  TheoremReport r = detail::start_report("theorem2a", params, opt);
  const double dc = critical_distance(params);

  const double ninth = relay_power_condition(1.0 / 9.0);
  detail::add_case(r, "condition at q=1/9 equals 190/729", 1e-15 - std::abs(ninth - 190.0 / 729.0), "ratio");
  detail::add_case(r, "condition at q=1/9 is >= 1/4", ninth - 0.25, "ratio");

  const double q = params.p2 / params.p1;
  const double lhs = relay_power_condition(q);
  r.values.emplace_back("q", q);
  r.values.emplace_back("condition_lhs", lhs);
  if (lhs < 0.25) {
    detail::add_case(r, "condition q(q+2)(q+1) >= 1/4 at q=P2/P1", lhs - 0.25, "ratio", false,
                     "relay power below the sufficient level; no containment claim made");
    r.verdict = Verdict::PreconditionNotMet;
    return r;
  }
  detail::add_case(r, "condition q(q+2)(q+1) >= 1/4 at q=P2/P1", lhs - 0.25, "ratio");

  const auto df_dc = region(params, {Strategy::DF, Model::FullDuplex}, dc, opt.n_theta, opt.tol, opt.threads);
  for (double d : d_list) {
    detail::require(d > dc, "theorem2a distances must exceed d_c");
    const auto cf = region(params, {Strategy::CF, Model::FullDuplex}, d, opt.n_theta, opt.tol, opt.threads);
    detail::add_case(r, detail::at_d(d, dc) + ": DF(d_c) contains CF(d)",
                     detail::containment_slack_margin(df_dc, cf, opt.tol), "length");
  }
  detail::finalize(r);
  return r;
}

/// Limit of the CF rate at the witness construction as P2 -> 0, with P1 = 1:
/// log2(1 + 1/(2(1 + x^alpha)) + 1/x^alpha).
inline double cf_small_relay_limit(double x, double alpha) {
  const double xa = std::pow(x, alpha);
  return log2_1p(0.5 / (1.0 + xa) + 1.0 / xa);
}

struct WitnessSearch {
  double x_max_factor = 1.5;      ///< destinations scanned over (d_c, factor d_c]
  std::size_t x_steps = 500;
  std::size_t d_steps = 2000;     ///< relay distances scanned over (0, d_c]
  std::size_t theta_steps = 32;   ///< relay angles scanned over [0, pi]
  int max_power_reductions = 4;   ///< P2 is divided by 10 this many times at most
};

namespace detail {

// Best DF rate at destination (x0, 0) over relay positions (d, theta) with
// d in (0, d_c]. Beyond d_c the relay cannot decode R, so those positions
// never give DF rate R.
inline double df_supremum_at(const ChannelParams& np, double x0, double dc, const WitnessSearch& ws) {
  double best = -1.0;
  double best_d = dc;
  double best_theta = 0.0;
  for (std::size_t j = 0; j <= ws.theta_steps; ++j) {
    const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(ws.theta_steps);
    for (std::size_t i = 1; i <= ws.d_steps; ++i) {
      const double d = dc * static_cast<double>(i) / static_cast<double>(ws.d_steps);
      const double v = rate_df_full(np, Layout{d, x0, theta}).rate;
      if (v > best) {
        best = v;
        best_d = d;
        best_theta = theta;
      }
    }
  }
  // Golden-section refinement in d around the best grid cell.
  const double step = dc / static_cast<double>(ws.d_steps);
  double a = std::max(best_d - step, 1e-6 * step);
  double b = std::min(best_d + step, dc);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double d) { return rate_df_full(np, Layout{d, x0, best_theta}).rate; };
  double c1 = b - g * (b - a);
  double c2 = a + g * (b - a);
  double f1 = f(c1);
  double f2 = f(c2);
  for (int it = 0; it < 100; ++it) {
    if (f1 > f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - g * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + g * (b - a);
      f2 = f(c2);
    }
  }
  return std::max({best, f1, f2, f(a), f(b)});
}

}  // namespace detail

/// Search for a destination that CF serves at rate R while no relay placement
/// lets DF do so. Relay at distance x0 - P2^(1/alpha) on the destination ray.
inline TheoremReport verify_theorem2_part2(const ChannelParams& params, const WitnessSearch& ws = {}) {
  validate(params);
  detail::require(ws.x_max_factor > 1.0 && ws.x_steps >= 2 && ws.d_steps >= 2, "invalid witness search grid");
  SuiteOptions so;
  so.n_theta = 0;
  so.tol = 0.0;
  TheoremReport r = detail::start_report("theorem2b", params, so);

  // Work with P1 = 1; lengths scale by P1^(-1/alpha).
  const double scale = std::pow(params.p1, -1.0 / params.alpha);
  ChannelParams np{1.0, params.p2 / params.p1, params.alpha, params.rate};
  const double dc = critical_distance(np);

  const double limit_x = 1.01 * dc;
  ChannelParams tiny = np;
  tiny.p2 = 1e-12;
  const double tiny_cf =
      rate_cf_full(tiny, Layout{limit_x - std::pow(tiny.p2, 1.0 / np.alpha), limit_x, 0.0}).rate;
  detail::add_case(r, "CF at construction approaches its small-relay limit (x=1.01*d_c)",
                   1e-4 - std::abs(tiny_cf - cf_small_relay_limit(limit_x, np.alpha)), "rate");

  for (int attempt = 0; attempt <= ws.max_power_reductions; ++attempt) {
    const double offset = std::pow(np.p2, 1.0 / np.alpha);
    for (std::size_t i = 1; i <= ws.x_steps; ++i) {
      const double x0 = dc * (1.0 + (ws.x_max_factor - 1.0) * static_cast<double>(i) / static_cast<double>(ws.x_steps));
      const double d0 = x0 - offset;
      if (d0 <= 0.0) continue;
      const double cf = rate_cf_full(np, Layout{d0, x0, 0.0}).rate;
      if (cf < np.rate) continue;
      const double df_sup = detail::df_supremum_at(np, x0, dc, ws);
      if (df_sup >= np.rate) continue;
      detail::add_case(r, "CF supports R at the witness", cf - np.rate, "rate");
      detail::add_case(r, "no relay position with d <= d_c gives DF rate R", np.rate - df_sup, "rate");
      detail::add_case(r, "witness lies beyond d_c", x0 - dc, "length");
      r.values.emplace_back("p2_used", np.p2 * params.p1);
      r.values.emplace_back("x0", x0 / scale);
      r.values.emplace_back("d0", d0 / scale);
      r.values.emplace_back("x0_over_dc", x0 / dc);
      r.values.emplace_back("cf_rate", cf);
      r.values.emplace_back("df_sup_rate", df_sup);
      detail::finalize(r);
      return r;
    }
    np.p2 /= 10.0;
  }
  r.values.emplace_back("p2_smallest_tried", np.p2 * 10.0 * params.p1);
  r.verdict = r.cases.front().pass ? Verdict::Inconclusive : Verdict::Fail;
  return r;
}

/// Half-duplex orderings: DF contains CF contains NR at listen fraction 1/2
/// when d < d'_c, and CF contains NR contains DF for every t when d > d_c.
inline TheoremReport verify_theorem5(const ChannelParams& params, const std::vector<double>& d_near,
                                     const std::vector<double>& d_far, const std::vector<double>& t_list,
                                     const SuiteOptions& opt = {}) {
  validate(params);
  TheoremReport r = detail::start_report("theorem5", params, opt);
  const double dc = critical_distance(params);
  const double dc_half = critical_distance_half(params);
  detail::add_case(r, "d'_c < d_c", dc - dc_half, "length");
  auto half = [&](Strategy s, double t, double d) {
    return region(params, {s, Model::HalfDuplex, t}, d, opt.n_theta, opt.tol, opt.threads);
  };
  for (double d : d_near) {
    const std::string tag = "d=" + format_number(d / dc_half, 6) + "*d'_c, t=0.5";
    if (!(d < dc_half)) {
      detail::add_case(r, tag + ": outside d < d'_c, skipped", 0.0, "length", false);
      continue;
    }
    const auto df = half(Strategy::DF, 0.5, d);
    const auto cf = half(Strategy::CF, 0.5, d);
    const auto nr = half(Strategy::NR, 0.5, d);
    detail::add_case(r, tag + ": DF contains CF", detail::containment_slack_margin(df, cf, opt.tol), "length");
    detail::add_case(r, tag + ": CF contains NR", detail::containment_slack_margin(cf, nr, opt.tol), "length");
  }
  for (double d : d_far) {
    if (!(d > dc)) {
      detail::add_case(r, detail::at_d(d, dc) + ": outside d > d_c, skipped", 0.0, "length", false);
      continue;
    }
    const auto nr = half(Strategy::NR, 0.5, d);
    for (double t : t_list) {
      const std::string tag = detail::at_d(d, dc) + ", t=" + format_number(t, 6);
      const auto df = half(Strategy::DF, t, d);
      const auto cf = half(Strategy::CF, t, d);
      detail::add_case(r, tag + ": CF contains NR", detail::containment_slack_margin(cf, nr, opt.tol), "length");
      detail::add_case(r, tag + ": NR contains DF", detail::containment_slack_margin(nr, df, opt.tol), "length");
    }
  }
  detail::finalize(r);
  return r;
}

/// Phase fading: UB region contains DF at any d, and the two coincide for d <= d_c.
inline TheoremReport verify_lemma2(const ChannelParams& params, double d, const SuiteOptions& opt = {}) {
  validate(params);
  TheoremReport r = detail::start_report("lemma2", params, opt);
  const double dc = critical_distance(params);
  const auto df = region(params, {Strategy::DF, Model::PhaseFading}, d, opt.n_theta, opt.tol, opt.threads);
  const auto ub = region(params, {Strategy::UB, Model::PhaseFading}, d, opt.n_theta, opt.tol, opt.threads);
  const std::string tag = detail::at_d(d, dc);
  detail::add_case(r, tag + ": UB contains DF", detail::containment_slack_margin(ub, df, opt.tol), "length");
  if (d <= dc) {
    double worst = 0.0;
    for (std::size_t k = 0; k < df.radii.size(); ++k) worst = std::max(worst, std::abs(df.radii[k] - ub.radii[k]));
    r.values.emplace_back("max_radius_gap", worst);
    detail::add_case(r, tag + ": UB and DF radii agree within 2 tol", 2.0 * opt.tol - worst, "length");
  } else {
    detail::add_case(r, tag + ": d > d_c, equality not asserted", 0.0, "length", false);
  }
  detail::finalize(r);
  return r;
}

/// alpha = 4, P1 = P2: the ellipse lower bound and the numeric DF area both
/// tend to 2 pi d_c^2 as d -> 0.
inline TheoremReport verify_lemma1_limit(const ChannelParams& params, int k_max = 12, const SuiteOptions& opt = {}) {
  validate(params);
  detail::require(k_max >= 2, "k_max must be >= 2");
  detail::require(std::abs(params.alpha - 4.0) <= 1e-12, "this suite requires alpha == 4");
  detail::require(std::abs(params.p1 - params.p2) <= 1e-12 * params.p1, "this suite requires p1 == p2");
  TheoremReport r = detail::start_report("lemma1", params, opt);
  const double dc = critical_distance(params);
  const double target = 2.0 * std::numbers::pi * dc * dc;
  std::vector<double> lower(static_cast<std::size_t>(k_max));
  std::vector<double> numeric(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double d = dc * std::ldexp(1.0, -k);
    const auto i = static_cast<std::size_t>(k - 1);
    lower[i] = area_lower_alpha4(params, d);
    numeric[i] = area(region(params, {Strategy::DF, Model::FullDuplex}, d, opt.n_theta, opt.tol, opt.threads));
    const std::string tag = "k=" + std::to_string(k);
    detail::add_case(r, tag + ": lower bound <= numeric area", numeric[i] * (1.0 + 1e-4) - lower[i], "area");
    r.values.emplace_back(tag + " lower/target", lower[i] / target);
    r.values.emplace_back(tag + " numeric/target", numeric[i] / target);
  }
  const double noise = 1e-4 * target;
  for (std::size_t i = 1; i < lower.size(); ++i) {
    const double gap_prev = numeric[i - 1] - lower[i - 1];
    const double gap = numeric[i] - lower[i];
    detail::add_case(r, "k=" + std::to_string(i + 1) + ": bound gap does not grow", gap_prev + noise - gap, "area");
  }
  const std::size_t last = lower.size() - 1;
  detail::add_case(r, "lower bound within 1e-3 of 2 pi d_c^2 at smallest d",
                   1e-3 - std::abs(lower[last] / target - 1.0), "ratio");
  detail::add_case(r, "numeric area within 1e-2 of 2 pi d_c^2 at smallest d",
                   1e-2 - std::abs(numeric[last] / target - 1.0), "ratio");
  const double lower_093 = area_lower_alpha4(params, distance_for_rho(params, 0.93));
  r.values.emplace_back("rho=0.93 lower/(pi d_c^2)", lower_093 / (std::numbers::pi * dc * dc));
  detail::add_case(r, "rho=0.93: lower bound exceeds 2 pi d_c^2", lower_093 / target - 1.0, "ratio");
  detail::finalize(r);
  return r;
}

/// One row of an area sweep; upper is NaN where no upper bound exists.
struct SweepRow {
  double d = 0.0;
  double area = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<SweepRow> bounds_sweep(const ChannelParams& params, const std::vector<double>& d_values,
                                          const SuiteOptions& opt = {}) {
  validate(params);
  const bool alpha2 = std::abs(params.alpha - 2.0) <= 1e-12;
  const bool alpha4 = std::abs(params.alpha - 4.0) <= 1e-12;
  detail::require(alpha2 || alpha4, "bounds defined only for alpha in {2,4}");
  std::vector<SweepRow> rows(d_values.size());
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    SweepRow& row = rows[i];
    row.d = d_values[i];
    if (alpha2) {
      const AreaBounds b = area_bounds_alpha2(params, row.d);
      row.lower = b.lower;
      row.upper = b.upper;
    } else {
      row.lower = area_lower_alpha4(params, row.d);
    }
    row.area = area(region(params, {Strategy::DF, Model::FullDuplex}, row.d, opt.n_theta, opt.tol, opt.threads));
  }
  return rows;
}

/// n evenly spaced distances ending at d_c: d_c k / n for k = 1..n.
inline std::vector<double> sweep_distances(const ChannelParams& params, std::size_t n) {
  detail::require(n >= 1, "sweep needs at least one distance");
  const double dc = critical_distance(params);
  std::vector<double> ds(n);
  for (std::size_t k = 0; k < n; ++k) ds[k] = dc * static_cast<double>(k + 1) / static_cast<double>(n);
  return ds;
}

namespace detail {

// Signed distance of bound points from the numeric DF boundary along their
// polar ray: positive when the point sits inside (inner) or outside (outer).
inline double bound_membership_margin(const ChannelParams& params, const BoundShape& shape, std::size_t n,
                                      double tol) {
  double worst = std::numeric_limits<double>::infinity();
  const double slack = 4.0 * tol + 1e-10 * critical_distance(params);
  for (const Point& p : bound_boundary_points(shape, n)) {
    const auto [r, phi] = to_polar(p);
    const double edge = boundary_radius(params, {Strategy::DF, Model::FullDuplex}, shape.d, phi, tol);
    const double m = shape.kind == BoundKind::EllipseInner ? edge - r : r - edge;
    worst = std::min(worst, m + slack);
  }
  return worst;
}

}  // namespace detail

/// alpha = 2 sandwich: numeric DF area between the ellipse and conic areas,
/// ratio never above 1.02217 and non-decreasing in d.
inline TheoremReport verify_theorem3(const ChannelParams& params, std::size_t n_d = 50, const SuiteOptions& opt = {}) {
  validate(params);
  TheoremReport r = detail::start_report("theorem3", params, opt);
  const auto ds = sweep_distances(params, n_d);
  const auto rows = bounds_sweep(params, ds, opt);
  double prev_ratio = 0.0;
  for (const SweepRow& row : rows) {
    const std::string tag = detail::at_d(row.d, critical_distance(params));
    const double ratio = row.upper / row.lower;
    detail::add_case(r, tag + ": lower <= area", row.area * (1.0 + 1e-4) - row.lower, "area");
    detail::add_case(r, tag + ": area <= upper", row.upper * (1.0 + 1e-4) - row.area, "area");
    detail::add_case(r, tag + ": upper/lower <= 1.02217", 1.02217 - ratio, "ratio");
    detail::add_case(r, tag + ": ratio non-decreasing in d", ratio - prev_ratio + 1e-12, "ratio", false);
    prev_ratio = ratio;
  }
  const double ratio_dc = rows.back().upper / rows.back().lower;
  r.values.emplace_back("ratio_at_dc", ratio_dc);
  detail::add_case(r, "ratio at d_c equals 1.02216 within 1e-4", 1e-4 - std::abs(ratio_dc - 1.02216), "ratio");
  // At d = d_c the DF rate meets R only to second order at the touching
  // points, so the boundary there is resolved to about sqrt(kRateTolerance).
  for (double frac : {0.25, 0.9}) {
    const double d = frac * critical_distance(params);
    const std::string tag = detail::at_d(d, critical_distance(params));
    detail::add_case(r, tag + ": ellipse points inside DF region",
                     detail::bound_membership_margin(params, ellipse_params_alpha2(params, d), 64, opt.tol), "length");
    detail::add_case(r, tag + ": conic points outside DF region",
                     detail::bound_membership_margin(params, conic_params_alpha2(params, d), 64, opt.tol), "length");
  }
  detail::finalize(r);
  return r;
}

/// alpha = 4 lower bound holds on a sweep and its boundary lies inside the region.
inline TheoremReport verify_theorem4(const ChannelParams& params, std::size_t n_d = 30, const SuiteOptions& opt = {}) {
  validate(params);
  TheoremReport r = detail::start_report("theorem4", params, opt);
  const double dc = critical_distance(params);
  const auto rows = bounds_sweep(params, sweep_distances(params, n_d), opt);
  for (const SweepRow& row : rows) {
    detail::add_case(r, detail::at_d(row.d, dc) + ": lower <= area", row.area * (1.0 + 1e-4) - row.lower, "area");
  }
  const double d093 = distance_for_rho(params, 0.93);
  const double ratio = area_lower_alpha4(params, d093) / (std::numbers::pi * dc * dc);
  r.values.emplace_back("rho=0.93 lower/(pi d_c^2)", ratio);
  detail::add_case(r, "rho=0.93: lower bound equals 2.0441 pi d_c^2 within 5e-4", 5e-4 - std::abs(ratio - 2.0441),
                   "ratio");
  for (double d : {0.25 * dc, d093, dc}) {
    detail::add_case(r, detail::at_d(d, dc) + ": ellipse points inside DF region",
                     detail::bound_membership_margin(params, ellipse_params_alpha4(params, d), 64, opt.tol), "length");
  }
  detail::finalize(r);
  return r;
}

struct RayleighSuiteOptions {
  FadingConfig config{0.35, 100000, 42, 0};
  std::size_t n_theta = 360;
  double x_tol = kDefaultOutageTol;
  unsigned threads = 0;
};

namespace detail {

// Largest amount by which `scheme` reaches past `other`: at the angle where
// its radius exceeds the other's most, the other's outage evaluated at this
// scheme's boundary, minus epsilon + 3 sigma.
inline double exclusion_margin(const ChannelParams& params, const OutageRegion& mine, const OutageRegion& other,
                               const RayleighSuiteOptions& opt, double& where) {
  std::size_t best = 0;
  double gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mine.region.radii.size(); ++k) {
    const double g = mine.region.radii[k] - other.region.radii[k];
    if (g > gap) {
      gap = g;
      best = k;
    }
  }
  where = mine.region.thetas[best];
  FadingConfig cfg = opt.config;
  cfg.stream_id = ray_stream(opt.config.stream_id, best, mine.region.radii.size());
  const Layout at{mine.region.d, mine.region.radii[best], where};
  const OutageEstimate est = outage_probability(params, other.region.scheme, at, cfg);
  const double sigma = binomial_std_error(opt.config.epsilon, est.samples);
  return est.probability - (opt.config.epsilon + 3.0 * sigma);
}

}  // namespace detail

/// Outage regions under Rayleigh fading: DF and CF do not contain one another,
/// and the NR radius matches the exponential-tail closed form.
inline TheoremReport verify_rayleigh(const ChannelParams& params, double d, const RayleighSuiteOptions& opt = {}) {
  validate(params);
  SuiteOptions so;
  so.n_theta = opt.n_theta;
  so.tol = opt.x_tol;
  TheoremReport r = detail::start_report("rayleigh", params, so);
  const auto df = outage_region(params, {Strategy::DF, Model::Rayleigh}, d, opt.config, opt.n_theta, opt.x_tol, opt.threads);
  const auto cf = outage_region(params, {Strategy::CF, Model::Rayleigh}, d, opt.config, opt.n_theta, opt.x_tol, opt.threads);
  const auto nr = outage_region(params, {Strategy::NR, Model::Rayleigh}, d, opt.config, opt.n_theta, opt.x_tol, opt.threads);
  double where_df = 0.0;
  double where_cf = 0.0;
  detail::add_case(r, "DF reaches beyond CF by more than 3 sigma",
                   detail::exclusion_margin(params, df, cf, opt, where_df), "probability");
  detail::add_case(r, "CF reaches beyond DF by more than 3 sigma",
                   detail::exclusion_margin(params, cf, df, opt, where_cf), "probability");
  r.values.emplace_back("df_excess_theta", where_df);
  r.values.emplace_back("cf_excess_theta", where_cf);

  // NR outage F(x) = 1 - exp(-(2^R - 1) x^alpha / P1); the estimate at the
  // bisected radius must match epsilon within 3 sigma plus the slope times
  // half the radius tolerance.
  const double tau = snr_threshold(params.rate);
  const double dhat = critical_distance_outage(params, opt.config.epsilon);
  r.values.emplace_back("d_hat_c", dhat);
  double worst = std::numeric_limits<double>::infinity();
  const double sigma = binomial_std_error(opt.config.epsilon, opt.config.n_samples);
  for (double x : nr.region.radii) {
    const double f = -std::expm1(-tau * std::pow(x, params.alpha) / params.p1);
    const double slope = (1.0 - f) * tau * params.alpha * std::pow(x, params.alpha - 1.0) / params.p1;
    worst = std::min(worst, 3.0 * sigma + 0.5 * slope * opt.x_tol - std::abs(f - opt.config.epsilon));
  }
  r.values.emplace_back("nr_radius_theta0", nr.region.radii[nr.region.radii.size() / 2]);
  detail::add_case(r, "NR radius matches closed form within 3 sigma", worst, "probability");
  detail::finalize(r);
  return r;
}

}  // namespace relaycov

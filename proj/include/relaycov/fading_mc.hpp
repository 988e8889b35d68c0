// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/parallel.hpp"
#include "relaycov/philox.hpp"
#include "relaycov/rates.hpp"

namespace relaycov {

/// Monte Carlo settings for outage-based coverage under Rayleigh fading.
struct FadingConfig {
  double epsilon = 0.1;            ///< tolerable outage probability, in (0, 1)
  std::uint32_t n_samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t stream_id = 0;
};

inline void validate(const FadingConfig& config) {
  detail::require(config.epsilon > 0.0 && config.epsilon < 1.0, "epsilon must lie in (0, 1)");
  detail::require(config.n_samples >= 1000, "n_samples must be >= 1000");
}

/// Fading power gains |h|^2 of the three links for one channel realization.
/// The amplitudes are Rayleigh with unit second moment, so each power gain
/// is exponential with mean 1. Phases never enter the rate expressions.
struct FadeDraw {
  double h12sq = 1.0;
  double h13sq = 1.0;
  double h23sq = 1.0;
};

/// Draw `index` of stream `stream_id` under `seed`. Two Philox blocks give
/// four 64-bit words; the first three become exponential variates.
inline FadeDraw fade_draw(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t index) {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto s_lo = static_cast<std::uint32_t>(stream_id);
  const auto s_hi = static_cast<std::uint32_t>(stream_id >> 32);
  const auto b0 = Philox4x32::generate({index, 0u, s_lo, s_hi}, key);
  const auto b1 = Philox4x32::generate({index, 1u, s_lo, s_hi}, key);
  auto expo = [](std::uint64_t bits) { return -std::log(unit_interval_open_below(bits)); };
  return {expo(join32(b0[0], b0[1])), expo(join32(b0[2], b0[3])), expo(join32(b1[0], b1[1]))};
}

inline std::vector<FadeDraw> sample_fades(const FadingConfig& config, std::size_t count) {
  detail::require(count >= 1, "count must be >= 1");
  detail::require(count <= std::numeric_limits<std::uint32_t>::max(), "too many draws for one stream");
  std::vector<FadeDraw> draws(count);
  for (std::size_t i = 0; i < count; ++i) {
    draws[i] = fade_draw(config.seed, config.stream_id, static_cast<std::uint32_t>(i));
  }
  return draws;
}

/// Rate of one realization: the phase-fading expressions with every link SNR
/// scaled by its fading power gain.
inline double realization_rate(const LinkSnr& s, Strategy strategy, const FadeDraw& h) {
  const double sr = h.h12sq * s.source_relay;
  const double sd = h.h13sq * s.source_dest;
  const double rd = h.h23sq * s.relay_dest;
  switch (strategy) {
    case Strategy::DF: return std::min(log2_1p(sr), log2_1p(sd + rd));
    case Strategy::CF: return log2_1p(sd + detail::cf_relay_term(sr, sd, rd));
    case Strategy::NR: return log2_1p(sd);
    case Strategy::UB: break;
  }
  throw PreconditionError("outage analysis supports DF, CF and NR only");
}

/// Same decision as realization_rate(...) >= R, made on SNRs against 2^R - 1.
inline bool realization_supports(const LinkSnr& s, Strategy strategy, const FadeDraw& h, double threshold) {
  const double sd = h.h13sq * s.source_dest;
  switch (strategy) {
    case Strategy::DF: return h.h12sq * s.source_relay >= threshold && sd + h.h23sq * s.relay_dest >= threshold;
    case Strategy::CF: {
      const double sr = h.h12sq * s.source_relay;
      return sd + detail::cf_relay_term(sr, sd, h.h23sq * s.relay_dest) >= threshold;
    }
    case Strategy::NR: return sd >= threshold;
    case Strategy::UB: break;
  }
  throw PreconditionError("outage analysis supports DF, CF and NR only");
}

struct OutageEstimate {
  double probability = 0.0;
  double std_error = 0.0;  ///< binomial standard error sqrt(p (1 - p) / n)
  std::size_t samples = 0;
};

inline double binomial_std_error(double p, std::size_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace detail {

inline void require_rayleigh(const Scheme& scheme) {
  require(scheme.model == Model::Rayleigh, "outage analysis requires the Rayleigh model");
  require(scheme.strategy != Strategy::UB, "outage analysis supports DF, CF and NR only");
}

inline std::size_t count_outages(const LinkSnr& s, Strategy strategy, const std::vector<FadeDraw>& draws,
                                 double threshold) {
  std::size_t fails = 0;
  for (const FadeDraw& h : draws) fails += realization_supports(s, strategy, h, threshold) ? 0 : 1;
  return fails;
}

}  // namespace detail

/// Empirical probability that the realized rate falls below R.
inline OutageEstimate outage_probability(const ChannelParams& params, const Scheme& scheme,
                                         const Layout& layout, const FadingConfig& config) {
  validate(params);
  validate(config);
  detail::require_rayleigh(scheme);
  const std::vector<FadeDraw> draws = sample_fades(config, config.n_samples);
  const std::size_t fails =
      detail::count_outages(link_snr(params, layout), scheme.strategy, draws, snr_threshold(params.rate));
  const double p = static_cast<double>(fails) / static_cast<double>(draws.size());
  return {p, binomial_std_error(p, draws.size()), draws.size()};
}

/// Outage-based region with the outage estimate at each boundary point.
struct OutageRegion {
  CoverageRegion region;
  FadingConfig config;
  std::vector<double> outage;
  std::vector<double> std_error;
};

/// Stream used for ray k of an n-ray grid. Mirror rays share a stream so the
/// estimated region is exactly symmetric about the source-relay axis.
inline std::uint64_t ray_stream(std::uint64_t base_stream, std::size_t k, std::size_t n) {
  const std::size_t m = mirror_index(k, n);
  return (base_stream << 32) + static_cast<std::uint64_t>(k < m ? k : m);
}

inline constexpr double kDefaultOutageTol = 1e-3;

/// Largest x per ray with estimated outage <= epsilon. Draws are held fixed
/// along a ray (common random numbers), so for x >= d the empirical outage is
/// non-decreasing in x and bisection on it is exact for the given sample.
inline OutageRegion outage_region(const ChannelParams& params, const Scheme& scheme, double d,
                                  const FadingConfig& config, std::size_t n_theta = 360,
                                  double x_tol = kDefaultOutageTol, unsigned threads = 0) {
  validate(params);
  validate(config);
  detail::require_rayleigh(scheme);
  detail::require(n_theta >= 16 && n_theta % 2 == 0, "n_theta must be even and >= 16");
  detail::require(d > 0.0 && std::isfinite(d), "relay distance d must be finite and > 0");
  OutageRegion out;
  out.config = config;
  out.region.params = params;
  out.region.scheme = scheme;
  out.region.d = d;
  out.region.tol = x_tol;
  out.region.thetas = theta_grid(n_theta);
  out.region.radii.assign(n_theta, 0.0);
  out.outage.assign(n_theta, 0.0);
  out.std_error.assign(n_theta, 0.0);

  const double threshold = snr_threshold(params.rate);
  const auto max_fails =
      static_cast<std::size_t>(std::floor(config.epsilon * static_cast<double>(config.n_samples) + 1e-9));
  RaySearchOptions opt;
  opt.tol = x_tol;
  opt.scan_interior = false;
  opt.max_radius = 1e4 * std::max(d, critical_distance(params));

  // Rays that share a stream produce identical radii; evaluate each once.
  std::vector<std::size_t> owners;
  for (std::size_t k = 0; k < n_theta; ++k) {
    if (k <= mirror_index(k, n_theta)) owners.push_back(k);
  }
  parallel_for(owners.size(), threads, [&](std::size_t j) {
    const std::size_t k = owners[j];
    FadingConfig ray_cfg = config;
    ray_cfg.stream_id = ray_stream(config.stream_id, k, n_theta);
    const std::vector<FadeDraw> draws = sample_fades(ray_cfg, config.n_samples);
    const double theta = out.region.thetas[k];
    auto fails_at = [&](double x) {
      return detail::count_outages(link_snr(params, Layout{d, x, theta}), scheme.strategy, draws, threshold);
    };
    auto covered = [&](double x) { return fails_at(x) <= max_fails; };
    RayBoundary ray;
    try {
      ray = search_ray(covered, d, opt);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " at theta=" + std::to_string(theta));
    }
    const double at = ray.radius > 0.0 ? ray.radius : kDistanceGuard;
    const double p = static_cast<double>(fails_at(at)) / static_cast<double>(draws.size());
    const std::size_t m = mirror_index(k, n_theta);
    for (std::size_t idx : {k, m}) {
      out.region.radii[idx] = ray.radius;
      out.outage[idx] = p;
      out.std_error[idx] = binomial_std_error(p, draws.size());
    }
  });
  out.region.empty = std::all_of(out.region.radii.begin(), out.region.radii.end(),
                                 [](double r) { return r <= 0.0; });
  return out;
}

}  // namespace relaycov

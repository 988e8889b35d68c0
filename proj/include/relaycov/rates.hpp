// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "relaycov/error.hpp"
#include "relaycov/geometry.hpp"

namespace relaycov {

enum class Strategy { DF, CF, NR, UB };
enum class Model { FullDuplex, HalfDuplex, PhaseFading, Rayleigh };

/// A relaying strategy evaluated under a channel model. The listen fraction
/// is only meaningful for the half-duplex model.
struct Scheme {
  Strategy strategy = Strategy::DF;
  Model model = Model::FullDuplex;
  double listen_fraction = 0.5;

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

inline void validate(const Scheme& scheme) {
  using detail::require;
  if (scheme.model == Model::HalfDuplex) {
    require(scheme.listen_fraction >= 0.0 && scheme.listen_fraction <= 1.0,
            "half-duplex listen fraction t must lie in [0, 1]");
    require(scheme.strategy != Strategy::UB, "no upper bound is defined for the half-duplex model");
  }
  require(!(scheme.strategy == Strategy::UB && scheme.model == Model::Rayleigh),
          "no upper bound is defined for the Rayleigh model");
}

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::DF: return "df";
    case Strategy::CF: return "cf";
    case Strategy::NR: return "nr";
    case Strategy::UB: return "ub";
  }
  return "?";
}

inline std::string_view to_string(Model m) {
  switch (m) {
    case Model::FullDuplex: return "full";
    case Model::HalfDuplex: return "half";
    case Model::PhaseFading: return "phase";
    case Model::Rayleigh: return "rayleigh";
  }
  return "?";
}

/// Scheme name as used on the command line and in files, e.g. "cf-half".
inline std::string scheme_name(const Scheme& scheme) {
  std::string name(to_string(scheme.strategy));
  name += '-';
  name += to_string(scheme.model);
  return name;
}

/// Parses "df-full", "cf-half", "ub-phase", "nr-rayleigh", ... A bare
/// strategy name ("nr") selects the full-duplex model.
inline Scheme parse_scheme(std::string_view text, double listen_fraction = 0.5) {
  Scheme scheme;
  scheme.listen_fraction = listen_fraction;
  const auto dash = text.find('-');
  const std::string_view strat = text.substr(0, dash);
  const std::string_view model = dash == std::string_view::npos ? "full" : text.substr(dash + 1);
  if (strat == "df") scheme.strategy = Strategy::DF;
  else if (strat == "cf") scheme.strategy = Strategy::CF;
  else if (strat == "nr") scheme.strategy = Strategy::NR;
  else if (strat == "ub") scheme.strategy = Strategy::UB;
  else throw PreconditionError("unknown strategy '" + std::string(strat) + "'");
  if (model == "full") scheme.model = Model::FullDuplex;
  else if (model == "half") scheme.model = Model::HalfDuplex;
  else if (model == "phase") scheme.model = Model::PhaseFading;
  else if (model == "rayleigh") scheme.model = Model::Rayleigh;
  else throw PreconditionError("unknown channel model '" + std::string(model) + "'");
  validate(scheme);
  return scheme;
}

/// Which term of a min-expression determined the rate.
enum class BindingTerm { RelayDecode, Destination, Both };

inline std::string_view to_string(BindingTerm b) {
  switch (b) {
    case BindingTerm::RelayDecode: return "relay-decode";
    case BindingTerm::Destination: return "destination";
    case BindingTerm::Both: return "both";
  }
  return "?";
}

struct RateResult {
  double rate = 0.0;                  ///< bits per channel use
  std::optional<double> rho_star;     ///< DF / UB correlation at the optimum
  BindingTerm binding = BindingTerm::Destination;
  bool degenerate = false;            ///< formula fell back to a limiting case
};

/// Rates within this many bits of the target count as meeting it, so layouts
/// placed exactly on a critical distance are not lost to rounding.
inline constexpr double kRateTolerance = 1e-12;

inline double log2_1p(double snr) { return std::log1p(snr) / std::numbers::ln2; }

/// Received SNRs of the three links for a given layout.
struct LinkSnr {
  double source_relay = 0.0;  ///< P1 / d12^alpha
  double source_dest = 0.0;   ///< P1 / d13^alpha
  double relay_dest = 0.0;    ///< P2 / d23^alpha
};

inline LinkSnr link_snr(const ChannelParams& params, const Layout& layout) {
  validate(params);
  const Distances dist = distances(layout);
  return {params.p1 * gain(dist.d12, params.alpha), params.p1 * gain(dist.d13, params.alpha),
          params.p2 * gain(dist.d23, params.alpha)};
}

namespace detail {

struct MaxMin {
  double value = 0.0;  // optimal SNR inside log2(1 + .)
  double rho = 0.0;
  BindingTerm binding = BindingTerm::RelayDecode;
};

// max over rho in [0,1] of min{a (1 - rho^2), b + c rho} with a, b, c >= 0.
// The first term falls and the second rises in rho, so the optimum is rho = 0
// when a <= b and otherwise the crossing a rho^2 + c rho + (b - a) = 0.
inline MaxMin coherent_max_min(double a, double b, double c) {
  if (a <= b) return {a, 0.0, BindingTerm::RelayDecode};
  const double excess = a - b;
  // Rationalized root; stays accurate when rho is close to 1.
  double rho = 2.0 * excess / (c + std::sqrt(c * c + 4.0 * a * excess));
  rho = std::clamp(rho, 0.0, 1.0);
  // Both terms agree at the crossing; the second is the well-conditioned one.
  return {b + c * rho, rho, BindingTerm::Both};
}

inline double cf_relay_term(double sr, double sd, double rd) {
  // P1/(d12^alpha (1 + N2)) with N2 = (sr + sd + 1) / rd, rearranged so that
  // rd = 0 gives 0 rather than 0 * inf.
  if (rd <= 0.0) return 0.0;
  return sr * rd / (rd + sr + sd + 1.0);
}

}  // namespace detail

inline RateResult rate_nr(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  return {log2_1p(s.source_dest), std::nullopt, BindingTerm::Destination, false};
}

/// Full-duplex decode-and-forward with coherent source/relay combining.
inline RateResult rate_df_full(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  const double b = s.source_dest + s.relay_dest;
  const double c = 2.0 * std::sqrt(s.source_dest * s.relay_dest);
  const detail::MaxMin mm = detail::coherent_max_min(s.source_relay, b, c);
  return {log2_1p(mm.value), mm.rho, mm.binding, false};
}

/// Full-duplex compress-and-forward. With no relay power the expression
/// collapses to the direct link and the result is flagged degenerate.
inline RateResult rate_cf_full(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  if (params.p2 <= 0.0) {
    return {log2_1p(s.source_dest), std::nullopt, BindingTerm::Destination, true};
  }
  const double relay = detail::cf_relay_term(s.source_relay, s.source_dest, s.relay_dest);
  return {log2_1p(relay + s.source_dest), std::nullopt, BindingTerm::Destination, false};
}

namespace detail {

// Half-duplex DF min-terms as functions of rho.
struct HalfDuplexDf {
  double t, sr, sd, rd, c;
  double relay_term(double rho) const {
    return t * log2_1p(sr) + (1.0 - t) * log2_1p((1.0 - rho * rho) * sd);
  }
  double dest_term(double rho) const {
    return t * log2_1p(sd) + (1.0 - t) * log2_1p(sd + rd + c * rho);
  }
};

}  // namespace detail

/// Half-duplex decode-and-forward; the relay listens a fraction t of the time.
inline RateResult rate_df_half(const ChannelParams& params, const Layout& layout, double t) {
  detail::require(t >= 0.0 && t <= 1.0, "listen fraction t must lie in [0, 1]");
  const LinkSnr s = link_snr(params, layout);
  const detail::HalfDuplexDf f{t, s.source_relay, s.source_dest, s.relay_dest,
                               2.0 * std::sqrt(s.source_dest * s.relay_dest)};
  const double relay0 = f.relay_term(0.0);
  if (relay0 <= f.dest_term(0.0)) return {relay0, 0.0, BindingTerm::RelayDecode, false};
  if (f.relay_term(1.0) >= f.dest_term(1.0)) {
    return {f.dest_term(1.0), 1.0, BindingTerm::Destination, false};
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f.relay_term(mid) > f.dest_term(mid)) lo = mid;
    else hi = mid;
  }
  const double at_lo = std::min(f.relay_term(lo), f.dest_term(lo));
  const double at_hi = std::min(f.relay_term(hi), f.dest_term(hi));
  return at_lo >= at_hi ? RateResult{at_lo, lo, BindingTerm::Both, false}
                        : RateResult{at_hi, hi, BindingTerm::Both, false};
}

/// Half-duplex compress-and-forward. Defined for 0 < t < 1; at the endpoints
/// the relay contributes nothing and the direct-link rate is returned.
inline RateResult rate_cf_half(const ChannelParams& params, const Layout& layout, double t) {
  detail::require(t >= 0.0 && t <= 1.0, "listen fraction t must lie in [0, 1]");
  const LinkSnr s = link_snr(params, layout);
  const double direct = log2_1p(s.source_dest);
  if (t <= 0.0 || t >= 1.0) return {direct, std::nullopt, BindingTerm::Destination, true};
  // N2 = (1 + sr + sd) / D with D = (1 + sd) ((1 + rd/(1 + sd))^((1-t)/t) - 1).
  const double spare =
      (1.0 + s.source_dest) * std::expm1((1.0 - t) / t * std::log1p(s.relay_dest / (1.0 + s.source_dest)));
  const double relay =
      spare <= 0.0 ? 0.0 : s.source_relay * spare / (spare + 1.0 + s.source_relay + s.source_dest);
  return {t * log2_1p(s.source_dest + relay) + (1.0 - t) * direct, std::nullopt,
          BindingTerm::Destination, false};
}

/// Phase-fading decode-and-forward: no coherent gain, so rho is fixed to 0.
inline RateResult rate_df_phase(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  const double relay = log2_1p(s.source_relay);
  const double dest = log2_1p(s.source_dest + s.relay_dest);
  if (relay < dest) return {relay, 0.0, BindingTerm::RelayDecode, false};
  if (dest < relay) return {dest, 0.0, BindingTerm::Destination, false};
  return {dest, 0.0, BindingTerm::Both, false};
}

/// Phase-fading cut-set upper bound: broadcast cut versus multiple-access cut.
inline RateResult rate_ub_phase(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  const double broadcast = log2_1p(s.source_relay + s.source_dest);
  const double mac = log2_1p(s.source_dest + s.relay_dest);
  if (broadcast < mac) return {broadcast, std::nullopt, BindingTerm::RelayDecode, false};
  if (mac < broadcast) return {mac, std::nullopt, BindingTerm::Destination, false};
  return {mac, std::nullopt, BindingTerm::Both, false};
}

/// Full-duplex cut-set bound with correlated inputs. Used to draw the "UB"
/// curves of the full-duplex region plots; not part of any theorem check.
inline RateResult rate_ub_full(const ChannelParams& params, const Layout& layout) {
  const LinkSnr s = link_snr(params, layout);
  const double b = s.source_dest + s.relay_dest;
  const double c = 2.0 * std::sqrt(s.source_dest * s.relay_dest);
  const detail::MaxMin mm = detail::coherent_max_min(s.source_relay + s.source_dest, b, c);
  return {log2_1p(mm.value), mm.rho, mm.binding, false};
}

/// SNR threshold 2^R - 1 that a link must reach to carry rate R.
inline double snr_threshold(double rate) { return std::expm1(rate * std::numbers::ln2); }

/// Largest relay distance at which the relay still decodes rate R.
inline double critical_distance(const ChannelParams& params) {
  validate(params);
  return std::pow(params.p1 / snr_threshold(params.rate), 1.0 / params.alpha);
}

/// Half-duplex analogue at t = 1/2: the relay must reach 2R while listening.
inline double critical_distance_half(const ChannelParams& params) {
  validate(params);
  return std::pow(params.p1 / snr_threshold(2.0 * params.rate), 1.0 / params.alpha);
}

/// Rayleigh-fading analogue: beyond it the relay decodes with probability
/// below 1 - epsilon.
inline double critical_distance_outage(const ChannelParams& params, double epsilon) {
  validate(params);
  detail::require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  return std::pow(-params.p1 * std::log1p(-epsilon) / snr_threshold(params.rate), 1.0 / params.alpha);
}

/// Dispatches on the scheme. Rayleigh rates are random and live in fading_mc.
inline RateResult evaluate(const ChannelParams& params, const Scheme& scheme, const Layout& layout) {
  validate(scheme);
  const double t = scheme.listen_fraction;
  switch (scheme.model) {
    case Model::FullDuplex:
      switch (scheme.strategy) {
        case Strategy::DF: return rate_df_full(params, layout);
        case Strategy::CF: return rate_cf_full(params, layout);
        case Strategy::NR: return rate_nr(params, layout);
        case Strategy::UB: return rate_ub_full(params, layout);
      }
      break;
    case Model::HalfDuplex:
      switch (scheme.strategy) {
        case Strategy::DF: return rate_df_half(params, layout, t);
        case Strategy::CF: return rate_cf_half(params, layout, t);
        case Strategy::NR: return rate_nr(params, layout);
        case Strategy::UB: break;
      }
      break;
    case Model::PhaseFading:
      switch (scheme.strategy) {
        case Strategy::DF: return rate_df_phase(params, layout);
        case Strategy::CF: return rate_cf_full(params, layout);
        case Strategy::NR: return rate_nr(params, layout);
        case Strategy::UB: return rate_ub_phase(params, layout);
      }
      break;
    case Model::Rayleigh:
      throw PreconditionError("Rayleigh-fading rates are random; use the outage functions");
  }
  throw PreconditionError("unsupported scheme " + scheme_name(scheme));
}

inline bool meets_rate(double rate, double target) { return rate >= target - kRateTolerance; }

}  // namespace relaycov

// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
//
// relaycov: rates, coverage regions, area bounds, verification suites and
// SVG plots for the three-node Gaussian relay channel.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaycov/io.hpp"
#include "relaycov/relaycov.hpp"

namespace {

using namespace relaycov;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInconclusive = 4;

struct ParamFlags {
  std::optional<double> p1, p2, alpha, rate;

  ChannelParams resolve(const ChannelParams& fallback) const {
    ChannelParams p{p1.value_or(fallback.p1), p2.value_or(fallback.p2), alpha.value_or(fallback.alpha),
                    rate.value_or(fallback.rate)};
    validate(p);
    return p;
  }
  bool any() const { return p1 || p2 || alpha || rate; }
};

struct Common {
  std::string config;
  unsigned threads = 0;
  bool json = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value file whose entries act as default flags");
  sub->add_option("--threads", c.threads, "worker threads, 0 = machine parallelism");
  sub->add_flag("--json", c.json, "print JSON instead of text");
}

void add_params(CLI::App* sub, ParamFlags& f) {
  sub->add_option("--p1", f.p1, "source power P1");
  sub->add_option("--p2", f.p2, "relay power P2");
  sub->add_option("--alpha", f.alpha, "path-loss exponent");
  sub->add_option("--rate,-R", f.rate, "target rate R in bits per channel use");
}

void print_kv(std::ostream& os, const std::string& key, const std::string& value) {
  os << key;
  for (std::size_t i = key.size(); i < 14; ++i) os << ' ';
  os << value << '\n';
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw PreconditionError("failed writing '" + path + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw PreconditionError("empty list '" + text + "'");
  return out;
}

// ---------------------------------------------------------------- rate

struct RateArgs {
  Common common;
  ParamFlags params;
  double d = 1.0, x = 1.0, theta = 0.0, t = 0.5;
  std::string scheme = "df-full";
  double epsilon = 0.1;
  std::uint32_t samples = 100000;
  std::uint64_t seed = 42;
};

int run_rate(const RateArgs& a) {
  const ChannelParams p = a.params.resolve({1.0, 1.0, 2.0, 1.0});
  const Scheme s = parse_scheme(a.scheme, a.t);
  const Layout layout{a.d, a.x, a.theta};
  json j;
  j["params"] = params_json(p);
  j["scheme"] = scheme_name(s);
  j["layout"] = {{"d", number_json(a.d)}, {"x", number_json(a.x)}, {"theta", number_json(a.theta)}};
  if (s.model == Model::Rayleigh) {
    FadingConfig cfg{a.epsilon, a.samples, a.seed, 0};
    const OutageEstimate est = outage_probability(p, s, layout, cfg);
    j["outage"] = number_json(est.probability);
    j["stderr"] = number_json(est.std_error);
    j["covered"] = est.probability <= a.epsilon;
  } else {
    const RateResult r = evaluate(p, s, layout);
    j["rate"] = number_json(r.rate);
    j["rho_star"] = r.rho_star ? number_json(*r.rho_star) : json(nullptr);
    j["binding"] = std::string(to_string(r.binding));
    j["degenerate"] = r.degenerate;
    j["meets_rate"] = meets_rate(r.rate, p.rate);
  }
  if (a.common.json) {
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  print_kv(std::cout, "scheme", scheme_name(s));
  if (s.model == Model::Rayleigh) {
    print_kv(std::cout, "outage", format_number(j["outage"].get<double>()));
    print_kv(std::cout, "stderr", format_number(j["stderr"].get<double>()));
    print_kv(std::cout, "covered", j["covered"].get<bool>() ? "yes" : "no");
  } else {
    print_kv(std::cout, "rate", format_number(j["rate"].get<double>()));
    if (!j["rho_star"].is_null()) print_kv(std::cout, "rho_star", format_number(j["rho_star"].get<double>()));
    print_kv(std::cout, "binding", j["binding"].get<std::string>());
    print_kv(std::cout, "meets_rate", j["meets_rate"].get<bool>() ? "yes" : "no");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- region

struct RegionArgs {
  Common common;
  ParamFlags params;
  double d = 1.0, t = 0.5, tol = kDefaultBoundaryTol;
  std::string schemes = "df-full";
  std::size_t n_theta = kDefaultThetaCount;
  std::string csv, json_out, out_prefix;
  std::optional<double> epsilon;
  std::uint32_t samples = 100000;
  std::uint64_t seed = 42;
};

int run_region(const RegionArgs& a) {
  const ChannelParams p = a.params.resolve({1.0, 1.0, 2.0, 1.0});
  std::vector<std::string> names;
  {
    std::stringstream ss(a.schemes);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
  }
  if (names.empty()) throw PreconditionError("no scheme given");
  if (names.size() > 1 && (!a.csv.empty() || !a.json_out.empty())) {
    throw PreconditionError("--csv/--json-out take a single scheme; use --out-prefix for several");
  }
  const double dc = critical_distance(p);
  json summary;
  summary["params"] = params_json(p);
  summary["d"] = number_json(a.d);
  summary["d_c"] = number_json(dc);
  summary["d_c_half"] = number_json(critical_distance_half(p));
  if (a.epsilon) summary["d_c_outage"] = number_json(critical_distance_outage(p, *a.epsilon));
  json regions = json::array();

  for (const std::string& name : names) {
    const Scheme s = parse_scheme(name, a.t);
    json doc;
    std::string csv_body;
    if (s.model == Model::Rayleigh) {
      FadingConfig cfg{a.epsilon.value_or(0.1), a.samples, a.seed, 0};
      if (!a.epsilon) summary["d_c_outage"] = number_json(critical_distance_outage(p, cfg.epsilon));
      const OutageRegion out = outage_region(p, s, a.d, cfg, a.n_theta, a.tol == kDefaultBoundaryTol ? kDefaultOutageTol : a.tol,
                                             a.common.threads);
      doc = region_json(out);
      std::ostringstream os;
      write_region_csv(os, out.region, &out);
      csv_body = os.str();
    } else {
      const CoverageRegion reg = region(p, s, a.d, a.n_theta, a.tol, a.common.threads);
      doc = region_json(reg);
      std::ostringstream os;
      write_region_csv(os, reg);
      csv_body = os.str();
    }
    const std::string tag = scheme_name(s);
    if (!a.csv.empty()) write_text_file(a.csv, csv_body);
    if (!a.json_out.empty()) write_text_file(a.json_out, doc.dump(1) + "\n");
    if (!a.out_prefix.empty()) {
      write_text_file(a.out_prefix + "_" + tag + ".csv", csv_body);
      write_text_file(a.out_prefix + "_" + tag + ".json", doc.dump(1) + "\n");
    }
    json entry{{"scheme", tag}, {"area", doc["area"]}, {"empty", doc["empty"]},
               {"area_over_pi_dc2", number_json(doc["area"].get<double>() / (std::numbers::pi * dc * dc))},
               {"non_star_rays", doc["non_star_thetas"].size()}};
    regions.push_back(entry);
  }
  summary["regions"] = regions;
  if (a.common.json) {
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
  }
  print_kv(std::cout, "d", format_number(a.d));
  print_kv(std::cout, "d_c", format_number(dc));
  print_kv(std::cout, "d'_c", format_number(summary["d_c_half"].get<double>()));
  if (summary.contains("d_c_outage")) print_kv(std::cout, "d^_c", format_number(summary["d_c_outage"].get<double>()));
  for (const auto& e : regions) {
    std::string line = "area=" + format_number(e["area"].get<double>()) +
                       "  area/(pi d_c^2)=" + format_number(e["area_over_pi_dc2"].get<double>(), 9);
    if (e["empty"].get<bool>()) line += "  (empty)";
    if (e["non_star_rays"].get<std::size_t>() > 0) {
      line += "  non-star rays=" + std::to_string(e["non_star_rays"].get<std::size_t>());
    }
    print_kv(std::cout, e["scheme"].get<std::string>(), line);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  Common common;
  ParamFlags params;
  std::optional<double> d, rho;
  bool numeric = false;
  std::size_t points = 256;
  std::size_t n_theta = kDefaultThetaCount;
  std::string out;
};

int run_bounds(const BoundsArgs& a) {
  const ChannelParams p = a.params.resolve({10.0, 10.0, 2.0, 1.0});
  const bool alpha2 = std::abs(p.alpha - 2.0) <= 1e-12;
  const bool alpha4 = std::abs(p.alpha - 4.0) <= 1e-12;
  if (!alpha2 && !alpha4) throw PreconditionError("bounds defined only for \xCE\xB1 \xE2\x88\x88 {2,4}");
  if (a.d && a.rho) throw PreconditionError("give either --d or --rho, not both");
  const double dc = critical_distance(p);
  const double d = a.rho ? distance_for_rho(p, *a.rho) : a.d.value_or(dc);
  const BoundShape inner = alpha2 ? ellipse_params_alpha2(p, d) : ellipse_params_alpha4(p, d);
  AreaBounds b{};
  if (alpha2) b = area_bounds_alpha2(p, d);
  else b.lower = area_lower_alpha4(p, d);
  const double unit = std::numbers::pi * dc * dc;

  json j;
  j["params"] = params_json(p);
  j["d"] = number_json(d);
  j["d_c"] = number_json(dc);
  j["rho"] = number_json(inner.rho);
  j["lambda"] = number_json(inner.lambda);
  j["gamma"] = number_json(inner.gamma);
  j["a"] = inner.a ? number_json(*inner.a) : json(nullptr);
  j["lower"] = number_json(b.lower);
  j["lower_over_pi_dc2"] = number_json(b.lower / unit);
  if (alpha2) {
    j["upper"] = number_json(b.upper);
    j["ratio"] = number_json(b.upper / b.lower);
  }
  bool sandwich_ok = true;
  if (a.numeric) {
    const double numeric = area(region(p, {Strategy::DF, Model::FullDuplex}, d, a.n_theta, kDefaultBoundaryTol,
                                       a.common.threads));
    sandwich_ok = b.lower <= numeric * (1.0 + 1e-4) && (!alpha2 || numeric <= b.upper * (1.0 + 1e-4));
    j["numeric_area"] = number_json(numeric);
    j["sandwich"] = sandwich_ok;
  }
  if (!a.out.empty()) {
    json doc;
    doc["inner"] = bounds_json(p, inner, b, a.points);
    if (alpha2) doc["outer"] = bounds_json(p, conic_params_alpha2(p, d), b, a.points);
    write_text_file(a.out, doc.dump(1) + "\n");
  }
  if (a.common.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    print_kv(std::cout, "d", format_number(d));
    print_kv(std::cout, "d_c", format_number(dc));
    print_kv(std::cout, "rho", format_number(inner.rho));
    print_kv(std::cout, "lambda", format_number(inner.lambda));
    print_kv(std::cout, "gamma", format_number(inner.gamma));
    if (inner.a) print_kv(std::cout, "a", format_number(*inner.a));
    print_kv(std::cout, "lower", format_number(b.lower) + "  (" + format_number(b.lower / unit, 9) + " pi d_c^2)");
    if (alpha2) {
      print_kv(std::cout, "upper", format_number(b.upper) + "  (" + format_number(b.upper / unit, 9) + " pi d_c^2)");
      print_kv(std::cout, "ratio", format_number(b.upper / b.lower, 9));
    }
    if (a.numeric) {
      print_kv(std::cout, "numeric_area", format_number(j["numeric_area"].get<double>()));
      print_kv(std::cout, "sandwich", sandwich_ok ? "holds" : "VIOLATED");
    }
  }
  return sandwich_ok ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  ParamFlags params;
  std::string suite = "all";
  std::string d_factors, d_far_factors, t_list;
  std::size_t n_theta = kDefaultThetaCount;
  double tol = kDefaultBoundaryTol;
  std::string out;
  double epsilon = 0.35;
  std::uint32_t samples = 100000;
  std::uint64_t seed = 42;
  double d = 0.9;
};

std::vector<double> scaled(const std::vector<double>& factors, double unit) {
  std::vector<double> out;
  for (double f : factors) out.push_back(f * unit);
  return out;
}

std::vector<double> or_default(const std::string& text, std::vector<double> fallback) {
  return text.empty() ? fallback : parse_list(text);
}

std::vector<TheoremReport> run_suite(const std::string& id, const VerifyArgs& a) {
  SuiteOptions opt;
  opt.n_theta = a.n_theta;
  opt.tol = a.tol;
  opt.threads = a.common.threads;
  std::vector<TheoremReport> out;
  if (id == "theorem1") {
    if (a.params.any() || !a.d_factors.empty()) {
      const ChannelParams p = a.params.resolve({10.0, 10.0, 3.52, 3.0});
      out.push_back(verify_theorem1(p, scaled(or_default(a.d_factors, {0.5, 0.9, 1.0}), critical_distance(p)), opt));
    } else {
      const ChannelParams rate3{10.0, 10.0, 3.52, 3.0};
      const ChannelParams rate4{10.0, 10.0, 3.52, 4.0};
      out.push_back(verify_theorem1(rate3, scaled({0.5, 0.9, 1.0}, critical_distance(rate3)), opt));
      out.push_back(verify_theorem1(rate4, scaled({1.1, 1.2, 1.5, 2.0}, critical_distance(rate4)), opt));
    }
  } else if (id == "theorem2a") {
    const ChannelParams p = a.params.resolve({10.0, 10.0, 2.0, 1.0});
    out.push_back(verify_theorem2_part1(p, scaled(or_default(a.d_factors, {1.1, 1.5, 3.0}), critical_distance(p)), opt));
  } else if (id == "theorem2b") {
    out.push_back(verify_theorem2_part2(a.params.resolve({1.0, 1e-4, 2.0, 1.0})));
  } else if (id == "theorem5") {
    const ChannelParams p = a.params.resolve({10.0, 10.0, 3.52, 3.0});
    out.push_back(verify_theorem5(p, scaled(or_default(a.d_factors, {0.5, 0.9}), critical_distance_half(p)),
                                  scaled(or_default(a.d_far_factors, {1.2}), critical_distance(p)),
                                  or_default(a.t_list, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}), opt));
  } else if (id == "lemma1") {
    out.push_back(verify_lemma1_limit(a.params.resolve({100.0, 100.0, 4.0, 1.0}), 12, opt));
  } else if (id == "lemma2") {
    const ChannelParams p = a.params.resolve({10.0, 10.0, 3.52, 3.0});
    for (double f : or_default(a.d_factors, {0.5, 0.9, 1.0})) out.push_back(verify_lemma2(p, f * critical_distance(p), opt));
  } else if (id == "theorem3") {
    out.push_back(verify_theorem3(a.params.resolve({10.0, 10.0, 2.0, 1.0}), 50, opt));
  } else if (id == "theorem4") {
    out.push_back(verify_theorem4(a.params.resolve({100.0, 100.0, 4.0, 1.0}), 30, opt));
  } else if (id == "rayleigh") {
    RayleighSuiteOptions ro;
    ro.config = {a.epsilon, a.samples, a.seed, 0};
    ro.n_theta = a.n_theta == kDefaultThetaCount ? 360 : a.n_theta;
    ro.threads = a.common.threads;
    out.push_back(verify_rayleigh(a.params.resolve({3.0, 0.3, 3.52, 1.0}), a.d, ro));
  } else if (id == "all") {
    for (const char* s : {"theorem1", "theorem2a", "theorem2b", "theorem3", "theorem4", "theorem5", "lemma1", "lemma2"}) {
      for (auto& r : run_suite(s, a)) out.push_back(std::move(r));
    }
  } else {
    throw PreconditionError("unknown suite '" + id +
                            "'; expected theorem1, theorem2a, theorem2b, theorem3, theorem4, theorem5, lemma1, "
                            "lemma2, rayleigh or all");
  }
  return out;
}

int run_verify(const VerifyArgs& a) {
  if (a.suite == "all" && a.params.any()) {
    throw PreconditionError("--suite all uses each suite's reference parameters; pick one suite to override them");
  }
  const std::vector<TheoremReport> reports = run_suite(a.suite, a);
  json arr = json::array();
  bool failed = false;
  bool inconclusive = false;
  for (const TheoremReport& r : reports) {
    arr.push_back(report_json(r));
    failed = failed || r.verdict == Verdict::Fail;
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
  }
  const json doc = reports.size() == 1 ? arr[0] : json{{"reports", arr}};
  if (!a.out.empty()) write_text_file(a.out, doc.dump(1) + "\n");
  if (a.common.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    for (const TheoremReport& r : reports) std::cout << report_text(r);
  }
  if (failed) return kExitVerifyFail;
  if (inconclusive) return kExitInconclusive;
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  ParamFlags params;
  std::optional<double> d_min, d_max;
  std::size_t steps = 50;
  std::size_t n_theta = kDefaultThetaCount;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const ChannelParams p = a.params.resolve({10.0, 10.0, 2.0, 1.0});
  const double dc = critical_distance(p);
  const double hi = a.d_max.value_or(dc);
  const double lo = a.d_min.value_or(hi / static_cast<double>(a.steps));
  if (a.steps < 1) throw PreconditionError("--steps must be >= 1");
  if (!(lo > 0.0 && lo <= hi && hi <= dc * (1.0 + 1e-12))) throw PreconditionError("sweep range must lie in (0, d_c]");
  std::vector<double> ds;
  for (std::size_t k = 0; k < a.steps; ++k) {
    ds.push_back(a.steps == 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(a.steps - 1));
  }
  SuiteOptions opt;
  opt.n_theta = a.n_theta;
  opt.threads = a.common.threads;
  const auto rows = bounds_sweep(p, ds, opt);
  std::ostringstream os;
  os << "d,area,lower,upper\n";
  for (const SweepRow& r : rows) {
    os << format_number(r.d) << ',' << format_number(r.area) << ',' << format_number(r.lower) << ','
       << (std::isnan(r.upper) ? std::string() : format_number(r.upper)) << '\n';
  }
  if (a.out.empty()) std::cout << os.str();
  else write_text_file(a.out, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
  Common common;
  std::vector<std::string> inputs;
  std::vector<std::string> labels;
  std::vector<std::string> styles;
  std::optional<double> d;
  std::string out;
  std::string title;
  int width = 640, height = 640;
};

PlotStyle parse_style(const std::string& text, std::size_t index) {
  PlotStyle st;
  st.stroke = palette_color(index);
  if (text.empty()) return st;
  const auto colon = text.find(':');
  st.stroke = text.substr(0, colon);
  if (colon != std::string::npos) st.dash = text.substr(colon + 1);
  for (char c : st.stroke) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '#') throw PreconditionError("bad color '" + st.stroke + "'");
  }
  return st;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("malformed JSON in '" + path + "': " + e.what());
  }
}

int run_plot(const PlotArgs& a) {
  if (a.inputs.empty()) throw PreconditionError("plot needs at least one --input");
  if (a.out.empty()) throw PreconditionError("plot needs --out");
  PlotSpec spec;
  spec.width = a.width;
  spec.height = a.height;
  spec.title = a.title;
  std::optional<double> relay = a.d;
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    const std::string& path = a.inputs[i];
    const PlotStyle style = parse_style(i < a.styles.size() ? a.styles[i] : std::string(), i);
    std::string label = i < a.labels.size() ? a.labels[i] : std::string();
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
      std::ifstream in(path);
      if (!in) throw PreconditionError("cannot open '" + path + "'");
      const RegionTable t = read_region_csv(in);
      CoverageRegion reg;
      reg.thetas = t.thetas;
      reg.radii = t.radii;
      reg.empty = true;
      for (double r : t.radii) reg.empty = reg.empty && r <= 0.0;
      spec.layers.push_back(region_layer(reg, style, label.empty() ? path : label));
      continue;
    }
    const json j = read_json_file(path);
    if (j.contains("radii")) {
      const CoverageRegion reg = region_from_json(j);
      if (!relay) relay = reg.d;
      spec.layers.push_back(region_layer(reg, style, label.empty() ? scheme_name(reg.scheme) : label));
    } else if (j.contains("inner")) {
      for (const char* part : {"inner", "outer"}) {
        if (!j.contains(part)) continue;
        const json& b = j[part];
        const std::vector<double> xs = b.at("x").get<std::vector<double>>();
        const std::vector<double> ys = b.at("y").get<std::vector<double>>();
        if (xs.size() != ys.size() || xs.empty()) throw PreconditionError("malformed bound in '" + path + "'");
        PlotLayer l;
        l.kind = LayerKind::Bound;
        l.style = style;
        if (std::string(part) == "outer" && l.style.dash.empty()) l.style.dash = "6 4";
        l.label = (label.empty() ? b.at("kind").get<std::string>() : label + " (" + part + ")");
        for (std::size_t k = 0; k < xs.size(); ++k) l.points.push_back({xs[k], ys[k]});
        if (!relay) relay = b.at("d").get<double>();
        spec.layers.push_back(std::move(l));
      }
    } else {
      throw PreconditionError("'" + path + "' is neither a region nor a bounds file");
    }
  }
  spec.layers.push_back(node_layer(relay.value_or(0.0)));
  fit_axes(spec);
  write_text_file(a.out, render_svg(spec));
  if (a.common.json) std::cout << json{{"out", a.out}, {"layers", spec.layers.size()}}.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- main

// Config entries become leading flags of the subcommand so that later
// command-line flags override them.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> injected;
  for (const auto& [key, value] : load_config(path)) {
    if (value == "true") {
      injected.push_back("--" + key);
    } else if (value != "false") {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage regions of the Gaussian relay channel"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RateArgs rate;
  auto* c_rate = app.add_subcommand("rate", "achievable rate at one layout");
  add_common(c_rate, rate.common);
  add_params(c_rate, rate.params);
  c_rate->add_option("--d", rate.d, "source-relay distance");
  c_rate->add_option("--x", rate.x, "source-destination distance");
  c_rate->add_option("--theta", rate.theta, "angle between relay and destination rays, radians");
  c_rate->add_option("--scheme", rate.scheme, "df|cf|nr|ub with -full|-half|-phase|-rayleigh");
  c_rate->add_option("--t", rate.t, "half-duplex listen fraction");
  c_rate->add_option("--epsilon", rate.epsilon, "outage target (Rayleigh)");
  c_rate->add_option("--samples", rate.samples, "Monte Carlo draws (Rayleigh)");
  c_rate->add_option("--seed", rate.seed, "random seed (Rayleigh)");

  RegionArgs reg;
  auto* c_region = app.add_subcommand("region", "coverage region boundary");
  add_common(c_region, reg.common);
  add_params(c_region, reg.params);
  c_region->add_option("--d", reg.d, "source-relay distance");
  c_region->add_option("--scheme", reg.schemes, "scheme or comma-separated list of schemes");
  c_region->add_option("--t", reg.t, "half-duplex listen fraction");
  c_region->add_option("--n-theta", reg.n_theta, "number of angles (even, >= 16)");
  c_region->add_option("--tol", reg.tol, "boundary tolerance");
  c_region->add_option("--csv", reg.csv, "write theta,radius table");
  c_region->add_option("--json-out", reg.json_out, "write region JSON");
  c_region->add_option("--out-prefix", reg.out_prefix, "write PREFIX_<scheme>.csv and .json per scheme");
  c_region->add_option("--epsilon", reg.epsilon, "outage target (Rayleigh)");
  c_region->add_option("--samples", reg.samples, "Monte Carlo draws per ray (Rayleigh)");
  c_region->add_option("--seed", reg.seed, "random seed (Rayleigh)");

  BoundsArgs bnd;
  auto* c_bounds = app.add_subcommand("bounds", "analytic area bounds of the DF region");
  add_common(c_bounds, bnd.common);
  add_params(c_bounds, bnd.params);
  c_bounds->add_option("--d", bnd.d, "source-relay distance, default d_c");
  c_bounds->add_option("--rho", bnd.rho, "select d by its correlation rho instead");
  c_bounds->add_flag("--numeric", bnd.numeric, "also compute the numeric area");
  c_bounds->add_option("--points", bnd.points, "boundary samples written with --out");
  c_bounds->add_option("--n-theta", bnd.n_theta, "angles for --numeric");
  c_bounds->add_option("--out", bnd.out, "write bound shapes as JSON");

  VerifyArgs ver;
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  add_common(c_verify, ver.common);
  add_params(c_verify, ver.params);
  c_verify->add_option("--suite", ver.suite, "suite id");
  c_verify->add_option("--d-factors", ver.d_factors, "relay distances as multiples of d_c (d'_c for theorem5)");
  c_verify->add_option("--d-far-factors", ver.d_far_factors, "theorem5 distances beyond d_c, multiples of d_c");
  c_verify->add_option("--t-list", ver.t_list, "theorem5 listen fractions");
  c_verify->add_option("--n-theta", ver.n_theta, "number of angles");
  c_verify->add_option("--tol", ver.tol, "boundary tolerance");
  c_verify->add_option("--out", ver.out, "write report JSON");
  c_verify->add_option("--epsilon", ver.epsilon, "outage target (rayleigh suite)");
  c_verify->add_option("--samples", ver.samples, "Monte Carlo draws (rayleigh suite)");
  c_verify->add_option("--seed", ver.seed, "random seed (rayleigh suite)");
  c_verify->add_option("--d", ver.d, "relay distance (rayleigh suite)");

  SweepArgs swp;
  auto* c_sweep = app.add_subcommand("sweep", "numeric DF area against the analytic bounds over d");
  add_common(c_sweep, swp.common);
  add_params(c_sweep, swp.params);
  c_sweep->add_option("--d-min", swp.d_min, "smallest d");
  c_sweep->add_option("--d-max", swp.d_max, "largest d, default d_c");
  c_sweep->add_option("--steps", swp.steps, "number of distances");
  c_sweep->add_option("--n-theta", swp.n_theta, "number of angles");
  c_sweep->add_option("--out", swp.out, "write CSV here instead of stdout");

  PlotArgs plt;
  auto* c_plot = app.add_subcommand("plot", "render region and bound files to SVG");
  add_common(c_plot, plt.common);
  c_plot->add_option("--input", plt.inputs, "region CSV/JSON or bounds JSON (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  c_plot->add_option("--label", plt.labels, "legend label per input (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  c_plot->add_option("--style", plt.styles, "color[:dasharray] per input (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  c_plot->add_option("--d", plt.d, "relay distance for the node marker");
  c_plot->add_option("--out", plt.out, "output SVG file");
  c_plot->add_option("--title", plt.title, "plot title");
  c_plot->add_option("--width", plt.width, "width in px");
  c_plot->add_option("--height", plt.height, "height in px");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*c_rate) return run_rate(rate);
    if (*c_region) return run_region(reg);
    if (*c_bounds) return run_bounds(bnd);
    if (*c_verify) return run_verify(ver);
    if (*c_sweep) return run_sweep(swp);
    if (*c_plot) return run_plot(plt);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

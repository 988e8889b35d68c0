// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relaycov/analytic_bounds.hpp"
#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"
#include "relaycov/fading_mc.hpp"
#include "relaycov/io_format.hpp"
#include "relaycov/rates.hpp"
#include "relaycov/verification.hpp"

namespace relaycov {

using json = nlohmann::json;

inline json number_json(double v) { return round_digits(v); }

inline json numbers_json(const std::vector<double>& vs) {
  json arr = json::array();
  for (double v : vs) arr.push_back(round_digits(v));
  return arr;
}

inline json params_json(const ChannelParams& p) {
  return {{"p1", number_json(p.p1)}, {"p2", number_json(p.p2)}, {"alpha", number_json(p.alpha)},
          {"rate", number_json(p.rate)}};
}

inline json region_json(const CoverageRegion& reg) {
  json j;
  j["params"] = params_json(reg.params);
  j["scheme"] = scheme_name(reg.scheme);
  if (reg.scheme.model == Model::HalfDuplex) j["listen_fraction"] = number_json(reg.scheme.listen_fraction);
  j["d"] = number_json(reg.d);
  j["tol"] = number_json(reg.tol);
  j["thetas"] = numbers_json(reg.thetas);
  j["radii"] = numbers_json(reg.radii);
  j["area"] = number_json(area(reg));
  j["empty"] = reg.empty;
  j["non_star_thetas"] = numbers_json(reg.non_star_thetas);
  return j;
}

inline json region_json(const OutageRegion& out) {
  json j = region_json(out.region);
  j["epsilon"] = number_json(out.config.epsilon);
  j["seed"] = out.config.seed;
  j["samples"] = out.config.n_samples;
  j["outage"] = numbers_json(out.outage);
  j["stderr"] = numbers_json(out.std_error);
  return j;
}

namespace detail {

inline std::vector<double> doubles_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw PreconditionError(std::string("missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw PreconditionError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

inline double number_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw PreconditionError(std::string("missing number '") + key + "'");
  return j[key].get<double>();
}

}  // namespace detail

inline CoverageRegion region_from_json(const json& j) {
  if (!j.is_object() || !j.contains("params") || !j.contains("scheme")) {
    throw PreconditionError("not a region document");
  }
  CoverageRegion reg;
  const json& p = j["params"];
  reg.params = {detail::number_from(p, "p1"), detail::number_from(p, "p2"), detail::number_from(p, "alpha"),
                detail::number_from(p, "rate")};
  const double t = j.contains("listen_fraction") ? detail::number_from(j, "listen_fraction") : 0.5;
  reg.scheme = parse_scheme(j["scheme"].get<std::string>(), t);
  reg.d = detail::number_from(j, "d");
  if (j.contains("tol")) reg.tol = detail::number_from(j, "tol");
  reg.thetas = detail::doubles_from(j, "thetas");
  reg.radii = detail::doubles_from(j, "radii");
  if (reg.thetas.size() != reg.radii.size()) throw PreconditionError("thetas and radii differ in length");
  reg.empty = true;
  for (double r : reg.radii) reg.empty = reg.empty && r <= 0.0;
  return reg;
}

/// Boundary table as stored in CSV files.
struct RegionTable {
  std::vector<double> thetas;
  std::vector<double> radii;
  std::vector<double> outage;     ///< empty unless the file has outage columns
  std::vector<double> std_error;
};

inline void write_region_csv(std::ostream& os, const CoverageRegion& reg, const OutageRegion* mc = nullptr) {
  os << (mc ? "theta,radius,outage,stderr\n" : "theta,radius\n");
  for (std::size_t k = 0; k < reg.thetas.size(); ++k) {
    os << format_number(reg.thetas[k]) << ',' << format_number(reg.radii[k]);
    if (mc) os << ',' << format_number(mc->outage[k]) << ',' << format_number(mc->std_error[k]);
    os << '\n';
  }
}

inline RegionTable read_region_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw PreconditionError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_outage = false;
  if (line == "theta,radius,outage,stderr") with_outage = true;
  else if (line != "theta,radius") throw PreconditionError("unexpected CSV header '" + line + "'");
  RegionTable t;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(parse_number(cell));
    if (cells.size() != (with_outage ? 4u : 2u)) throw PreconditionError("malformed CSV row '" + line + "'");
    t.thetas.push_back(cells[0]);
    t.radii.push_back(cells[1]);
    if (with_outage) {
      t.outage.push_back(cells[2]);
      t.std_error.push_back(cells[3]);
    }
  }
  if (t.thetas.empty()) throw PreconditionError("CSV has no rows");
  return t;
}

inline json bounds_json(const ChannelParams& params, const BoundShape& shape, std::optional<AreaBounds> bounds,
                        std::size_t n_points) {
  json j;
  j["params"] = params_json(params);
  j["kind"] = std::string(to_string(shape.kind));
  j["d"] = number_json(shape.d);
  j["rho"] = number_json(shape.rho);
  j["lambda"] = number_json(shape.lambda);
  j["gamma"] = number_json(shape.gamma);
  j["a"] = shape.a ? number_json(*shape.a) : json(nullptr);
  if (bounds) {
    j["lower"] = number_json(bounds->lower);
    j["upper"] = shape.a ? number_json(bounds->upper) : json(nullptr);
  }
  json xs = json::array();
  json ys = json::array();
  for (const Point& p : bound_boundary_points(shape, n_points)) {
    xs.push_back(round_digits(p.x));
    ys.push_back(round_digits(p.y));
  }
  j["x"] = xs;
  j["y"] = ys;
  return j;
}

inline json report_json(const TheoremReport& r) {
  json j;
  j["theorem_id"] = r.theorem_id;
  j["params"] = params_json(r.params);
  j["n_theta"] = r.n_theta;
  j["tol"] = number_json(r.tol);
  j["verdict"] = std::string(to_string(r.verdict));
  json cases = json::array();
  for (const CaseResult& c : r.cases) {
    json cj{{"label", c.label}, {"pass", c.pass}, {"margin", number_json(c.margin)}, {"unit", c.unit},
            {"hard", c.hard}};
    if (!c.note.empty()) cj["note"] = c.note;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = number_json(v);
  j["values"] = values;
  return j;
}

inline std::string report_text(const TheoremReport& r) {
  std::ostringstream os;
  os << r.theorem_id << ": " << to_string(r.verdict) << "  (p1=" << format_number(r.params.p1)
     << " p2=" << format_number(r.params.p2) << " alpha=" << format_number(r.params.alpha)
     << " R=" << format_number(r.params.rate) << ")\n";
  for (const CaseResult& c : r.cases) {
    os << "  [" << (c.pass ? "ok" : (c.hard ? "FAIL" : "info")) << "] " << c.label
       << "  margin=" << format_number(c.margin, 6) << ' ' << c.unit;
    if (!c.note.empty()) os << "  (" << c.note << ')';
    os << '\n';
  }
  for (const auto& [k, v] : r.values) os << "  " << k << " = " << format_number(v) << '\n';
  return os.str();
}

/// key = value lines; '#' starts a comment, [section] headers are ignored,
/// values may be double-quoted.
inline std::vector<std::pair<std::string, std::string>> parse_config(std::istream& is) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw PreconditionError("config line " + std::to_string(lineno) + ": empty key");
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace relaycov

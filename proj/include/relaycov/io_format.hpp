// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "relaycov/error.hpp"

namespace relaycov {

inline constexpr int kOutputDigits = 12;

/// Locale-independent shortest %g-style text with `digits` significant digits.
inline std::string format_number(double v, int digits = kOutputDigits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw PreconditionError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

/// v rounded to `digits` significant digits, as written to output files.
inline double round_digits(double v, int digits = kOutputDigits) {
  if (!std::isfinite(v)) return v;
  return parse_number(format_number(v, digits));
}

}  // namespace relaycov

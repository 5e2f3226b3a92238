#pragma once

// ASCII angle stream:  stream = record* ;  record = float ',' float ',' float '#'
//
// Fields are degrees. Whitespace around a field is ignored. A float is an
// optional sign, one or more digits, an optional '.' followed by digits and
// an optional exponent. Anything else makes the record malformed.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hipjerk/error.hpp"
#include "hipjerk/euler.hpp"

namespace hipjerk {

inline constexpr char kRecordTerminator = '#';
inline constexpr char kFieldSeparator = ',';

struct ParseReport {
  std::vector<AngleTriple> records;
  std::size_t empty_expunged = 0;
  std::size_t malformed_skipped = 0;
  bool trailing_partial = false;
  /// Parsed records outside the nominal angle ranges (kept, only counted).
  std::size_t out_of_range = 0;
};

namespace detail {

inline bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool matches_float_syntax(std::string_view s) {
  std::size_t i = 0;
  auto digits = [&] {
    const std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    return i > start;
  };
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (!digits()) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (!digits()) return false;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (!digits()) return false;
  }
  return i == s.size();
}

inline std::optional<double> parse_field(std::string_view raw) {
  std::string_view s = trim(raw);
  if (!matches_float_syntax(s)) return std::nullopt;
  // from_chars rejects a leading '+'.
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline std::optional<AngleTriple> parse_record(std::string_view segment) {
  std::array<double, 3> fields{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = segment.find(kFieldSeparator, start);
    const std::string_view field =
        segment.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (count == 3) return std::nullopt;
    const auto value = parse_field(field);
    if (!value) return std::nullopt;
    fields[count++] = *value;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != 3) return std::nullopt;
  return AngleTriple{fields[0], fields[1], fields[2]};
}

inline void append_double(std::string& out, double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace detail

/// Never throws on malformed input; every anomaly is counted in the report.
inline ParseReport parse_stream(std::string_view raw) {
  ParseReport report;
  std::size_t start = 0;
  while (start < raw.size()) {
    const std::size_t hash = raw.find(kRecordTerminator, start);
    if (hash == std::string_view::npos) {
      // Unterminated tail: a truncated record, unless it is only whitespace.
      if (!detail::trim(raw.substr(start)).empty()) report.trailing_partial = true;
      break;
    }
    const std::string_view segment = raw.substr(start, hash - start);
    start = hash + 1;
    if (detail::trim(segment).empty()) {
      ++report.empty_expunged;
      continue;
    }
    if (auto record = detail::parse_record(segment)) {
      if (!record->in_nominal_range()) ++report.out_of_range;
      report.records.push_back(*record);
    } else {
      ++report.malformed_skipped;
    }
  }
  return report;
}

/// Shortest round-trip decimal form for every field, each record '#'-terminated.
inline std::string encode_stream(std::span<const AngleTriple> records) {
  std::string out;
  out.reserve(records.size() * 24);
  for (const AngleTriple& r : records) {
    if (!r.is_finite()) throw Error(ErrorCode::InvalidRecord, "cannot encode a non-finite angle");
    detail::append_double(out, r.yaw);
    out.push_back(kFieldSeparator);
    detail::append_double(out, r.pitch);
    out.push_back(kFieldSeparator);
    detail::append_double(out, r.roll);
    out.push_back(kRecordTerminator);
  }
  return out;
}

}  // namespace hipjerk

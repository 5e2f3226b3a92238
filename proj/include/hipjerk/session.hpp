#pragma once

// Session files.
//
//   # dt=0.02
//   # source=udp 0.0.0.0:5555
//   # empty_expunged=0
//   # malformed_skipped=0
//   # trailing_partial=0
//   # out_of_range=0
//   yaw_deg,pitch_deg,roll_deg
//   12.5,-3,0.25
//   ...
//
// Metadata is a block of "# key=value" lines ahead of the CSV header.
// Unknown keys are ignored. A file without a dt line gets kDefaultDt.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hipjerk/error.hpp"
#include "hipjerk/euler.hpp"
#include "hipjerk/wire_format.hpp"

namespace hipjerk {

/// Shortest sampling period the device supports, seconds.
inline constexpr double kMinDt = 0.020;
inline constexpr double kDefaultDt = kMinDt;
inline constexpr std::string_view kSessionHeader = "yaw_deg,pitch_deg,roll_deg";

struct SessionDiagnostics {
  std::size_t empty_expunged = 0;
  std::size_t malformed_skipped = 0;
  bool trailing_partial = false;
  std::size_t out_of_range = 0;

  static SessionDiagnostics from(const ParseReport& report) {
    return {report.empty_expunged, report.malformed_skipped, report.trailing_partial,
            report.out_of_range};
  }

  friend bool operator==(const SessionDiagnostics&, const SessionDiagnostics&) = default;
};

struct Session {
  std::vector<AngleTriple> records;
  double dt = kDefaultDt;
  std::string source;
  SessionDiagnostics diagnostics;

  friend bool operator==(const Session&, const Session&) = default;
};

namespace detail {

inline std::string format_double(double value) {
  std::string s;
  append_double(s, value);
  return s;
}

inline std::size_t parse_count(std::string_view text, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::FormatError,
                "line " + std::to_string(line) + ": expected a count, got '" + std::string(text) + "'");
  }
  return value;
}

inline std::string single_line(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace detail

inline std::string format_session(const Session& session) {
  std::string out;
  out += "# dt=" + detail::format_double(session.dt) + "\n";
  out += "# source=" + detail::single_line(session.source) + "\n";
  out += "# empty_expunged=" + std::to_string(session.diagnostics.empty_expunged) + "\n";
  out += "# malformed_skipped=" + std::to_string(session.diagnostics.malformed_skipped) + "\n";
  out += "# trailing_partial=" + std::string(session.diagnostics.trailing_partial ? "1" : "0") + "\n";
  out += "# out_of_range=" + std::to_string(session.diagnostics.out_of_range) + "\n";
  out += kSessionHeader;
  out += '\n';
  for (const AngleTriple& r : session.records) {
    if (!r.is_finite()) throw Error(ErrorCode::InvalidRecord, "session holds a non-finite angle");
    detail::append_double(out, r.yaw);
    out += ',';
    detail::append_double(out, r.pitch);
    out += ',';
    detail::append_double(out, r.roll);
    out += '\n';
  }
  return out;
}

/// `origin` only labels error messages.
inline Session parse_session(std::string_view text, std::string_view origin = "<memory>") {
  Session session;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::FormatError,
                 std::string(origin) + ": line " + std::to_string(line_no) + ": " + why);
  };
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty()) continue;

    if (!header_seen && line.front() == '#') {
      std::string_view kv = detail::trim(line.substr(1));
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) continue;  // free-form comment
      const std::string_view key = detail::trim(kv.substr(0, eq));
      const std::string_view value = kv.substr(eq + 1);
      if (key == "dt") {
        const auto dt = detail::parse_field(value);
        if (!dt || !(*dt > 0.0)) throw fail("dt must be a positive number");
        session.dt = *dt;
      } else if (key == "source") {
        session.source = std::string(value);
      } else if (key == "empty_expunged") {
        session.diagnostics.empty_expunged = detail::parse_count(detail::trim(value), line_no);
      } else if (key == "malformed_skipped") {
        session.diagnostics.malformed_skipped = detail::parse_count(detail::trim(value), line_no);
      } else if (key == "trailing_partial") {
        session.diagnostics.trailing_partial = detail::parse_count(detail::trim(value), line_no) != 0;
      } else if (key == "out_of_range") {
        session.diagnostics.out_of_range = detail::parse_count(detail::trim(value), line_no);
      }
      continue;
    }
    if (!header_seen) {
      if (detail::trim(line) != kSessionHeader) {
        throw fail("expected header '" + std::string(kSessionHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto record = detail::parse_record(line);
    if (!record) throw fail("expected three decimal fields 'yaw,pitch,roll'");
    session.records.push_back(*record);
  }
  if (!header_seen) {
    throw Error(ErrorCode::FormatError, std::string(origin) + ": missing header line");
  }
  return session;
}

inline void save_session(const Session& session, const std::filesystem::path& path) {
  const std::string text = format_session(session);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

inline Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str(), path.string());
}

}  // namespace hipjerk

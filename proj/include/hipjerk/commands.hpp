#pragma once

// Operator-level commands shared by the command-line tool and the tests.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hipjerk/acquisition.hpp"
#include "hipjerk/error.hpp"
#include "hipjerk/euler.hpp"
#include "hipjerk/jerk_index.hpp"
#include "hipjerk/session.hpp"
#include "hipjerk/synth.hpp"

namespace hipjerk {

enum class OutputFormat { Text, Structured };

/// Process exit statuses. Success is 0.
namespace exit_status {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kAcquisition = 3;
inline constexpr int kFormat = 4;
inline constexpr int kDegenerate = 5;
}  // namespace exit_status

inline int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return exit_status::kUsage;
    case ErrorCode::BindError:
    case ErrorCode::EmptyAcquisition:
    case ErrorCode::SendError: return exit_status::kAcquisition;
    case ErrorCode::IoError:
    case ErrorCode::FormatError:
    case ErrorCode::InvalidRecord: return exit_status::kFormat;
    case ErrorCode::TooShort:
    case ErrorCode::DegeneratePath: return exit_status::kDegenerate;
    case ErrorCode::NotSkew:
    case ErrorCode::NotRotation: return exit_status::kInternal;
  }
  return exit_status::kInternal;
}

struct Report {
  JerkReport jerk;
  std::string source;
  std::string convention;
  SessionDiagnostics diagnostics;
};

inline RotationTrajectory session_trajectory(const Session& session,
                                             const EulerConvention& convention) {
  std::vector<RotationMatrix> samples;
  samples.reserve(session.records.size());
  for (const AngleTriple& a : session.records) samples.push_back(euler_to_rotation(a, convention));
  return RotationTrajectory(std::move(samples), session.dt);
}

/// Angles -> rotations -> jerk index. No filtering is applied to the angles.
inline Report compute_report(const Session& session, const EulerConvention& convention = {}) {
  Report report;
  report.jerk = jerk_index(session_trajectory(session, convention));
  report.source = session.source;
  report.convention = convention.name();
  report.diagnostics = session.diagnostics;
  return report;
}

inline nlohmann::json to_json(const Report& r) {
  return {
      {"jerk_index", r.jerk.jerk_index},
      {"path_length", r.jerk.path_length},
      {"normalization", r.jerk.normalization},
      {"sample_count", r.jerk.sample_count},
      {"dt", r.jerk.dt},
      {"duration", r.jerk.duration},
      {"source", r.source},
      {"convention", r.convention},
      {"diagnostics",
       {{"empty_expunged", r.diagnostics.empty_expunged},
        {"malformed_skipped", r.diagnostics.malformed_skipped},
        {"trailing_partial", r.diagnostics.trailing_partial},
        {"out_of_range", r.diagnostics.out_of_range},
        {"ambiguous_steps", r.jerk.ambiguous_steps}}},
  };
}

inline std::string render(const Report& r, OutputFormat format) {
  if (format == OutputFormat::Structured) return to_json(r).dump(2) + "\n";
  auto num = [](double v) { return detail::format_double(v); };
  std::string out;
  out += "jerk_index     " + num(r.jerk.jerk_index) + "\n";
  out += "path_length    " + num(r.jerk.path_length) + " rad\n";
  out += "normalization  " + num(r.jerk.normalization) + " s^2/rad\n";
  out += "sample_count   " + std::to_string(r.jerk.sample_count) + "\n";
  out += "dt             " + num(r.jerk.dt) + " s\n";
  out += "duration       " + num(r.jerk.duration) + " s\n";
  out += "source         " + r.source + "\n";
  out += "convention     " + r.convention + "\n";
  out += "diagnostics    empty_expunged=" + std::to_string(r.diagnostics.empty_expunged) +
         " malformed_skipped=" + std::to_string(r.diagnostics.malformed_skipped) +
         " trailing_partial=" + (r.diagnostics.trailing_partial ? "1" : "0") +
         " out_of_range=" + std::to_string(r.diagnostics.out_of_range) +
         " ambiguous_steps=" + std::to_string(r.jerk.ambiguous_steps) + "\n";
  return out;
}

inline Session simulate_session(const WalkParams& params, const EulerConvention& convention = {}) {
  Session session;
  session.records = trajectory_to_angles(generate_walk(params), convention).angles;
  session.dt = params.dt;
  session.source = "simulate n=" + std::to_string(params.n) + " seed=" + std::to_string(params.seed) +
                   " base_rate=" + detail::format_double(params.base_rate) +
                   " noise_amp=" + detail::format_double(params.noise_amp) + " " + convention.name();
  for (const AngleTriple& a : session.records) {
    if (!a.in_nominal_range()) ++session.diagnostics.out_of_range;
  }
  return session;
}

/// Adds multiples of 2π so consecutive samples never jump by more than π.
/// Each output equals its input plus an integer number of turns.
inline std::vector<double> unwrap_radians(std::span<const double> angles) {
  constexpr double turn = 2.0 * std::numbers::pi;
  std::vector<double> out;
  out.reserve(angles.size());
  double turns = 0.0;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    if (k > 0) turns += std::round((angles[k - 1] - angles[k]) / turn);
    out.push_back(angles[k] + turns * turn);
  }
  return out;
}

/// Columns: time, then yaw/pitch/roll in unwrapped radians.
inline std::string plot_data(const Session& session) {
  std::vector<double> yaw;
  std::vector<double> pitch;
  std::vector<double> roll;
  for (const AngleTriple& a : session.records) {
    yaw.push_back(a.yaw * kDegToRad);
    pitch.push_back(a.pitch * kDegToRad);
    roll.push_back(a.roll * kDegToRad);
  }
  const auto uy = unwrap_radians(yaw);
  const auto up = unwrap_radians(pitch);
  const auto ur = unwrap_radians(roll);
  std::string out = "t_s,yaw_rad,pitch_rad,roll_rad\n";
  for (std::size_t k = 0; k < uy.size(); ++k) {
    detail::append_double(out, static_cast<double>(k) * session.dt);
    out += ',';
    detail::append_double(out, uy[k]);
    out += ',';
    detail::append_double(out, up[k]);
    out += ',';
    detail::append_double(out, ur[k]);
    out += '\n';
  }
  return out;
}

}  // namespace hipjerk

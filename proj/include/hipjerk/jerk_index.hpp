#pragma once

// Normalized Cartesian kinematic jerk of a sampled rotation trajectory.
//
// Consecutive samples are joined by geodesic arcs, so the body angular
// velocity on step k is
//
//     ω_k = vee(Log(R_kᵀ R_{k+1})) / ΔT,          k = 0 … N-2
//
// and the jerk is the second difference of ω (not a covariant derivative):
//
//     ω̈_k = (ω_k - 2ω_{k-1} + ω_{k-2}) / ΔT²,     k = 2 … N-2
//     d̃   = ΔT Σ_k ‖ω_k‖
//     C   = (N-2)² ΔT² / d̃
//     J̃   = C ΔT Σ_k ‖ω̈_k‖
//
// C carries units s²/rad, which makes J̃ dimensionless and cancels both the
// amplitude of the motion and the observation time in the continuous limit.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hipjerk/error.hpp"
#include "hipjerk/so3.hpp"

namespace hipjerk {

/// Paths shorter than this (radians) cannot be normalized.
inline constexpr double kDegeneratePathThreshold = 1e-9;
inline constexpr std::size_t kMinJerkSamples = 4;

class RotationTrajectory {
 public:
  RotationTrajectory(std::vector<RotationMatrix> samples, double dt)
      : samples_(std::move(samples)), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw Error(ErrorCode::InvalidInput, "sampling period must be positive and finite");
    }
  }

  std::span<const RotationMatrix> samples() const { return samples_; }
  const RotationMatrix& operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }
  double dt() const { return dt_; }

  /// T = (N - 1) ΔT
  double duration() const {
    return samples_.empty() ? 0.0 : static_cast<double>(samples_.size() - 1) * dt_;
  }

 private:
  std::vector<RotationMatrix> samples_;
  double dt_;
};

struct AngularVelocitySeries {
  std::vector<Vec3> omegas;  // rad/s, upper-triangular vee layout
  double dt = 0.0;
  /// Steps whose relative rotation was a half turn (log resolved by tie-break).
  std::vector<std::size_t> ambiguous_steps;
};

struct JerkReport {
  double jerk_index = 0.0;     // dimensionless
  double path_length = 0.0;    // rad
  double normalization = 0.0;  // s²/rad
  std::size_t sample_count = 0;
  double dt = 0.0;        // s
  double duration = 0.0;  // s
  std::size_t ambiguous_steps = 0;
};

inline AngularVelocitySeries angular_velocity(const RotationTrajectory& traj) {
  if (traj.size() < 2) {
    throw Error(ErrorCode::TooShort, "angular_velocity needs at least 2 samples, got " +
                                         std::to_string(traj.size()));
  }
  AngularVelocitySeries series;
  series.dt = traj.dt();
  series.omegas.reserve(traj.size() - 1);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const Mat3 step = traj[k].matrix().transpose() * traj[k + 1].matrix();
    const LogResult log = log_so3_detail(step);
    if (log.tie_break) series.ambiguous_steps.push_back(k);
    series.omegas.push_back(vee(log.omega) / traj.dt());
  }
  return series;
}

inline std::vector<Vec3> second_difference(const AngularVelocitySeries& series) {
  const auto& w = series.omegas;
  if (w.size() < 3) {
    throw Error(ErrorCode::TooShort, "second_difference needs at least 3 velocities, got " +
                                         std::to_string(w.size()));
  }
  const double inv_dt2 = 1.0 / (series.dt * series.dt);
  std::vector<Vec3> out;
  out.reserve(w.size() - 2);
  for (std::size_t k = 2; k < w.size(); ++k) {
    out.push_back((w[k] - 2.0 * w[k - 1] + w[k - 2]) * inv_dt2);
  }
  return out;
}

inline double path_length(const AngularVelocitySeries& series) {
  if (series.omegas.empty()) throw Error(ErrorCode::TooShort, "path_length of an empty series");
  double sum = 0.0;
  for (const Vec3& w : series.omegas) sum += w.norm();
  return series.dt * sum;
}

inline JerkReport jerk_index(const RotationTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < kMinJerkSamples) {
    throw Error(ErrorCode::TooShort,
                "jerk_index needs at least 4 samples, got " + std::to_string(n));
  }
  const AngularVelocitySeries series = angular_velocity(traj);
  const double dt = traj.dt();

  JerkReport report;
  report.sample_count = n;
  report.dt = dt;
  report.duration = traj.duration();
  report.ambiguous_steps = series.ambiguous_steps.size();
  report.path_length = path_length(series);
  if (!(report.path_length > kDegeneratePathThreshold)) {
    throw Error(ErrorCode::DegeneratePath,
                "path length " + std::to_string(report.path_length) + " rad is too small to normalize");
  }

  double jerk_sum = 0.0;
  for (const Vec3& j : second_difference(series)) jerk_sum += j.norm();

  const double scale = static_cast<double>(n - 2) * dt;
  report.normalization = scale * scale / report.path_length;
  report.jerk_index = report.normalization * dt * jerk_sum;
  return report;
}

}  // namespace hipjerk

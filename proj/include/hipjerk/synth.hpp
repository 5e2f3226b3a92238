#pragma once

// Synthetic orientation walks and a UDP replayer standing in for the phone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hipjerk/error.hpp"
#include "hipjerk/euler.hpp"
#include "hipjerk/jerk_index.hpp"
#include "hipjerk/so3.hpp"
#include "hipjerk/udp.hpp"
#include "hipjerk/wire_format.hpp"

namespace hipjerk {

struct WalkParams {
  std::size_t n = 450;
  double dt = 0.020;
  std::uint64_t seed = 1;
  double base_rate = 1.0;  // rad/s
  double noise_amp = 0.0;  // rad, bound on each per-step perturbation

  void validate() const {
    if (n < kMinJerkSamples) throw Error(ErrorCode::InvalidInput, "walk needs n >= 4");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidInput, "walk needs dt > 0");
    if (!(base_rate >= 0.0) || !std::isfinite(base_rate)) {
      throw Error(ErrorCode::InvalidInput, "walk needs base_rate >= 0");
    }
    if (!(noise_amp >= 0.0) || !std::isfinite(noise_amp)) {
      throw Error(ErrorCode::InvalidInput, "walk needs noise_amp >= 0");
    }
  }
};

/// Uniform doubles from std::mt19937_64, whose output sequence is fixed by
/// the C++ standard. The top 53 bits map to [0, 1), so the stream is
/// identical on every conforming platform.
class WalkRng {
 public:
  explicit WalkRng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

 private:
  std::mt19937_64 engine_;
};

/// R_0 = I, R_{k+1} = R_k Exp(hat(dt v + η_k)) with ‖v‖ = base_rate in a
/// seeded direction and η_k uniform per component in ±noise_amp/√3.
/// The perturbation draws do not depend on noise_amp, so walks that share a
/// seed differ only in the scale of η.
inline RotationTrajectory generate_walk(const WalkParams& p) {
  p.validate();
  WalkRng rng(p.seed);
  const Vec3 drift = rng.unit_vector() * (p.base_rate * p.dt);
  const double half_width = p.noise_amp / std::sqrt(3.0);

  std::vector<RotationMatrix> samples;
  samples.reserve(p.n);
  samples.emplace_back();
  for (std::size_t k = 1; k < p.n; ++k) {
    const Vec3 xi(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const Vec3 step = drift + half_width * xi;
    samples.push_back(samples.back() * exp_so3(hat(step)));
  }
  return RotationTrajectory(std::move(samples), p.dt);
}

struct AngleSeries {
  std::vector<AngleTriple> angles;
  std::vector<std::size_t> gimbal_lock_rows;
};

inline AngleSeries trajectory_to_angles(const RotationTrajectory& traj,
                                        const EulerConvention& convention = {}) {
  AngleSeries out;
  out.angles.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const EulerDecomposition d = rotation_to_euler(traj[k], convention);
    if (d.gimbal_lock) out.gimbal_lock_rows.push_back(k);
    out.angles.push_back(d.angles);
  }
  return out;
}

struct ReplayTarget {
  std::string host = "127.0.0.1";
  std::uint16_t port = 5555;
};

struct ReplayStats {
  std::size_t datagrams = 0;
  std::size_t records = 0;
};

/// Sends `chunk` records per datagram, one datagram every chunk*dt seconds.
/// Pacing is sleep-based and only approximate.
inline ReplayStats replay(std::span<const AngleTriple> records, const ReplayTarget& dest,
                          double dt, std::size_t chunk) {
  if (chunk == 0) throw Error(ErrorCode::InvalidInput, "replay chunk must be >= 1");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidInput, "replay dt must be >= 0");
  net::Sender sender(dest.host, dest.port);

  const auto start = std::chrono::steady_clock::now();
  const auto period = std::chrono::duration<double>(dt * static_cast<double>(chunk));
  ReplayStats stats;
  for (std::size_t first = 0; first < records.size(); first += chunk) {
    if (stats.datagrams > 0) {
      std::this_thread::sleep_until(
          start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      period * static_cast<double>(stats.datagrams)));
    }
    const auto batch = records.subspan(first, std::min(chunk, records.size() - first));
    if (!sender.send(encode_stream(batch))) {
      throw Error(ErrorCode::SendError, "send to " + dest.host + ":" + std::to_string(dest.port) +
                                            " failed after " + std::to_string(stats.records) +
                                            " records: " + net::errno_message(errno));
    }
    ++stats.datagrams;
    stats.records += batch.size();
  }
  return stats;
}

}  // namespace hipjerk

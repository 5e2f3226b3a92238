// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "hipjerk/hipjerk.hpp"
#include "oracles.hpp"

namespace {

using namespace hipjerk;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

RotationTrajectory to_trajectory(const std::vector<Mat3>& mats, double dt) {
  std::vector<RotationMatrix> samples;
  samples.reserve(mats.size());
  for (const Mat3& m : mats) samples.push_back(RotationMatrix::from_matrix(m));
  return RotationTrajectory(std::move(samples), dt);
}

// R_k = R_0 Exp(k ΔT Ω), evaluated in extended precision and rounded once, so
// the inputs are as close to an exact geodesic as doubles allow.
Outcome geodesic_zero() {
  using Ld = long double;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> rate(0.1, 5.0);
  const std::size_t sizes[] = {4, 50, 450};
  double worst = 0.0;
  double worst_rate = 0.0;
  std::size_t worst_n = 0;
  int passed = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = sizes[i % 3];
    const Eigen::Matrix<Ld, 3, 3> start = oracle::random_rotation(rng).cast<Ld>();
    const double r = rate(rng);
    const Eigen::Matrix<Ld, 3, 1> axis = oracle::random_unit(rng).cast<Ld>();
    std::vector<Mat3> mats;
    for (std::size_t k = 0; k < n; ++k) {
      const Ld angle = static_cast<Ld>(r) * static_cast<Ld>(k) * 0.02L;
      const Eigen::Matrix<Ld, 3, 3> step = Eigen::AngleAxis<Ld>(angle, axis).toRotationMatrix();
      mats.push_back((start * step).cast<double>());
    }
    const double j = jerk_index(to_trajectory(mats, 0.02)).jerk_index;
    if (j <= 1e-9) ++passed;
    if (j > worst) {
      worst = j;
      worst_rate = r;
      worst_n = n;
    }
  }
  return {passed == 50, std::to_string(passed) + "/50 within 1e-9; max J = " + fmt("%.3e", worst) + " at N = " +
                            std::to_string(worst_n) + ", rate " + fmt("%.2f", worst_rate) + " rad/s"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(103);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + i % 9;  // 4..12
    const auto mats = oracle::random_trajectory(rng, n, 2.5);
    const auto expected = oracle::brute_force_jerk(mats, 0.02);
    const double got = jerk_index(to_trajectory(mats, 0.02)).jerk_index;
    worst = std::max(worst, std::abs(got - expected.jerk_index) / std::abs(expected.jerk_index));
  }
  return {worst <= 1e-10, "max relative deviation = " + fmt("%.3e", worst) + " (limit 1e-10)"};
}

Outcome exp_log_round_trip() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> angle(1e-6, kPi - 0.01);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = oracle::random_unit(rng) * angle(rng);
    worst = std::max(worst, (log_so3(exp_so3(hat(v))).upper() - v).cwiseAbs().maxCoeff());
  }
  double worst_pi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat3 r = Eigen::AngleAxisd(kPi, oracle::random_unit(rng)).toRotationMatrix();
    worst_pi = std::max(worst_pi, (exp_so3(log_so3(r)).matrix() - r).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10 && worst_pi <= 1e-8, "log(exp) err = " + fmt("%.3e", worst) +
                                                  " (limit 1e-10), exp(log) at pi err = " +
                                                  fmt("%.3e", worst_pi) + " (limit 1e-8)"};
}

Outcome quaternion_norm_oracle() {
  std::mt19937_64 rng(109);
  const double dt = 0.02;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto mats = oracle::random_trajectory(rng, 40, 3.0);
    const auto series = angular_velocity(to_trajectory(mats, dt));
    for (std::size_t k = 0; k < series.omegas.size(); ++k) {
      const double expected = oracle::geodesic_angle(mats[k], mats[k + 1]) / dt;
      worst = std::max(worst, std::abs(series.omegas[k].norm() - expected));
    }
  }
  return {worst <= 1e-9, "max |‖ω‖ - quaternion| = " + fmt("%.3e", worst) + " rad/s (limit 1e-9)"};
}

// Single-axis cubic profile θ(t) = amplitude (t / T)³ over n samples.
double cubic_jerk(std::size_t n, double dt, double amplitude) {
  const double total = static_cast<double>(n - 1) * dt;
  std::vector<Mat3> mats;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) * dt / total;
    mats.push_back(oracle::single_axis(1, amplitude * u * u * u));
  }
  return jerk_index(to_trajectory(mats, dt)).jerk_index;
}

Outcome scale_invariance() {
  constexpr std::size_t n = 400;
  constexpr double dt = 0.02;
  constexpr double amplitude = 2.0;
  const double base = cubic_jerk(n, dt, amplitude);
  double worst = 0.0;
  for (double alpha : {0.5, 2.0}) {
    // Same path over alpha times the duration, resampled at the same dt.
    const auto resampled = static_cast<std::size_t>(std::lround(static_cast<double>(n - 1) * alpha)) + 1;
    worst = std::max(worst, std::abs(cubic_jerk(resampled, dt, amplitude) - base) / base);
  }
  for (double beta : {0.5, 2.0, 10.0}) {
    worst = std::max(worst, std::abs(cubic_jerk(n, dt, beta * amplitude) - base) / base);
  }
  return {worst < 0.05, "J = " + fmt("%.6f", base) + ", max relative change = " + fmt("%.3e", worst) +
                            " (limit 5e-2)"};
}

Outcome erraticness_ordering() {
  std::string detail;
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    double previous = -1.0;
    std::string row = "seed " + std::to_string(seed) + ":";
    for (double noise : {0.0, 0.01, 0.05, 0.1}) {
      WalkParams p;
      p.n = 450;
      p.dt = 0.02;
      p.seed = seed;
      p.base_rate = 1.0;
      p.noise_amp = noise;
      const double j = jerk_index(generate_walk(p)).jerk_index;
      row += " " + fmt("%.4g", j);
      if (!(j > previous)) pass = false;
      previous = j;
    }
    if (seed == 1 || !pass) detail = row;
  }
  return {pass, "J over noise {0, 0.01, 0.05, 0.1} strictly increasing for 10 seeds; " + detail};
}

Outcome wire_codec() {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> yaw(0.0, 360.0);
  std::uniform_real_distribution<double> other(-180.0, 180.0);
  std::uniform_int_distribution<int> count(0, 20);
  int round_trip_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<AngleTriple> records;
    for (int k = count(rng); k > 0; --k) records.push_back({yaw(rng), other(rng), other(rng) / 2});
    if (parse_stream(encode_stream(records)).records != records) ++round_trip_failures;
  }
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 256);
  std::size_t fuzz_records = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s.push_back(static_cast<char>(byte(rng)));
    fuzz_records += parse_stream(s).records.size();
  }
  const auto a = parse_stream("1.0,2.0,3.0#4.0,5.0,6.0#");
  const bool ex1 = a.records == std::vector<AngleTriple>{{1, 2, 3}, {4, 5, 6}} && a.empty_expunged == 0 &&
                   a.malformed_skipped == 0 && !a.trailing_partial;
  const auto b = parse_stream("##");
  const bool ex2 = b.records.empty() && b.empty_expunged == 2;
  const auto c = parse_stream("1.0,2.0,3.0#4.0,5.0");
  const bool ex3 = c.records.size() == 1 && c.trailing_partial;
  return {round_trip_failures == 0 && ex1 && ex2 && ex3,
          std::to_string(round_trip_failures) + " round-trip failures in 10000, 10000 fuzz inputs survived (" +
              std::to_string(fuzz_records) + " records), examples " + (ex1 && ex2 && ex3 ? "ok" : "FAILED")};
}

Outcome loopback_mode(Termination mode) {
  WalkParams p;
  p.n = 450;
  p.seed = 17;
  p.noise_amp = 0.03;
  const Session simulated = simulate_session(p);
  const auto dir = std::filesystem::temp_directory_path();
  const auto file = dir / ("hipjerk_acceptance_" + std::to_string(::getpid()) + ".csv");
  save_session(simulated, file);
  const Session offline_session = load_session(file);
  std::filesystem::remove(file);
  auto offline = to_json(compute_report(offline_session));

  ListenConfig cfg;
  cfg.dt = offline_session.dt;
  if (mode == Termination::BufferFull) {
    cfg.timeout = 10.0;
    cfg.buffer_size = encode_stream(offline_session.records).size();
  } else {
    cfg.timeout = 1.0;
    cfg.buffer_size = 1 << 24;
  }
  UdpListener listener = UdpListener::on_free_port(cfg);
  const auto start = Clock::now();
  std::thread sender([&] { replay(offline_session.records, {"127.0.0.1", listener.port()}, 0.0002, 30); });
  const Acquisition acq = acquire(listener);
  sender.join();
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  auto live = to_json(compute_report(acq.session));
  offline.erase("source");
  live.erase("source");
  const bool pass = acq.termination == mode && live == offline && elapsed < 2.0 * cfg.timeout &&
                    acq.session.records == offline_session.records;
  return {pass, std::string(to_string(acq.termination)) + " after " + fmt("%.3f", elapsed) + " s (timeout " +
                    fmt("%.1f", cfg.timeout) + " s), " + std::to_string(acq.datagrams) + " datagrams, report " +
                    (live == offline ? "identical" : "DIFFERS")};
}

Outcome loopback() {
  const Outcome full = loopback_mode(Termination::BufferFull);
  const Outcome timeout = loopback_mode(Termination::Timeout);
  return {full.pass && timeout.pass, "[" + full.detail + "] [" + timeout.detail + "]"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"geodesic-zero", 1.0, geodesic_zero},
      {"oracle-equivalence", 5.0, oracle_equivalence},
      {"exp-log-round-trip", 1.0, exp_log_round_trip},
      {"quaternion-norm-oracle", 0.0, quaternion_norm_oracle},
      {"scale-invariance", 0.0, scale_invariance},
      {"erraticness-ordering", 0.0, erraticness_ordering},
      {"wire-codec", 0.0, wire_codec},
      {"loopback-end-to-end", 0.0, loopback},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; runtime over " + fmt("%.1f", c.time_limit_s) + " s";
    }
    std::printf("[%s] %-24s %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), seconds);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

// Scores a smooth walk and increasingly erratic versions of it.

#include <cstdio>

#include "hipjerk/hipjerk.hpp"

int main() {
  using namespace hipjerk;
  std::printf("%-10s %-14s %-12s\n", "noise_amp", "jerk_index", "path_rad");
  for (double noise : {0.0, 0.01, 0.05, 0.1}) {
    WalkParams p;
    p.n = 450;
    p.seed = 42;
    p.noise_amp = noise;
    // Go through the angle representation, as a phone stream would.
    const Session session = simulate_session(p);
    const Report r = compute_report(session);
    std::printf("%-10.2f %-14.6g %-12.4f\n", noise, r.jerk.jerk_index, r.jerk.path_length);
  }
  return 0;
}

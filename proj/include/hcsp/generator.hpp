#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hcsp/instance.hpp"

namespace hcsp {

// Shape knobs for the synthetic instance generator. Profiles mirror the kind
// of data the solver is meant for: routing-benchmark style weeks ("default",
// "solomon10", "solomon15") and grid-aligned desk-scale instances ("tiny")
// whose windows, durations and travel times are multiples of `grid`, so that
// exhaustive search over a `grid`-minute discretization loses nothing.
struct GeneratorProfile {
  std::string name = "default";
  int days = 5;
  int grid = 1;
  int min_duration = 30;
  int max_duration = 90;
  int hard_min_width = 180;
  int hard_max_width = 360;
  int earliest_start = 480;
  int latest_end = 1260;
  TimeWindow availability{420, 1260};
  int daily_max_cap = 600;  // <= 0 means "availability width"
  double compat_prob = 0.8;
  double contract_fraction = 0.5;
  int coord_range = 60;

  static GeneratorProfile by_name(std::string_view name);
};

// Deterministic in (n_services, n_caregivers, seed, profile). Out-of-range
// sizes are clamped (with a note in meta). The generator retries internally
// (still seed-deterministic) until a constructive greedy probe certifies the
// instance is solvable.
Instance generate_instance(int n_services, int n_caregivers, std::uint64_t seed,
                           const GeneratorProfile& profile = {});

}  // namespace hcsp

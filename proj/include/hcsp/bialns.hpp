#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hcsp/alns.hpp"
#include "hcsp/archive.hpp"
#include "hcsp/instance.hpp"
#include "hcsp/rng.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

struct BialnsConfig {
  // step 1: build and polish one solution per lexicographic direction
  int init_iterations = 1000;
  DestroyProportion init_proportion{true, 100.0};
  std::optional<double> init_time_limit_sec;  // wall-clock override, split between directions
  // step 2: diversify route structures with short inner searches
  int route_iterations = 5000;
  int inner_iterations = 5;
  DestroyProportion inner_proportion{true, 5.0};
  // step 3: densify the front with schedule shifts
  long long schedule_iterations = 200000;

  double cooling = 0.999;
  std::uint64_t seed = 0;

  // "default", "solomon-10", "solomon-15", "real-week", "smoke"
  static BialnsConfig preset(std::string_view name);
  Json to_json() const;
};

struct BialnsResult {
  ParetoArchive<EvaluatedSolution> front;
  RouteSet pool;
  std::vector<Json> log;  // one JSON object per line of the run log
};

// Feasible starting solution built by random greedy insertion under the given
// direction. Throws std::runtime_error naming the service when the instance
// admits no placement for it.
EvaluatedSolution initial_solution(const Instance& instance, const ObjectiveWeights& weights,
                                   LexDirection direction, Rng& rng);

// The full three-step biobjective search. Deterministic for a fixed seed
// (unless a wall-clock limit is set).
BialnsResult bialns(const Instance& instance, const BialnsConfig& config);

}  // namespace hcsp

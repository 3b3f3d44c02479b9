#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hcsp/instance.hpp"
#include "hcsp/rng.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

enum class RemovalOp { Random = 0, Related, Cost, OneRoute, TwoRoute };
enum class InsertionOp {
  BasicGreedy = 0,
  RandomGreedy,
  DifferentCaregiverBasicGreedy,
  DifferentCaregiverRandomGreedy,
};
constexpr int kNumRemovalOps = 5;
constexpr int kNumInsertionOps = 4;

const char* removal_op_name(RemovalOp op);
const char* insertion_op_name(InsertionOp op);

// Fraction of services destroyed per iteration: either a fixed percentage or
// "auto": a fresh uniform draw from (0, percent] each iteration. At least one
// service is always removed.
struct DestroyProportion {
  bool automatic = true;
  double percent = 100.0;

  int count(int n_services, Rng& rng) const;
  static DestroyProportion parse(const std::string& text);  // "auto_5%", "5%", "0.05"
  std::string to_string() const;
};

// Adaptive operator weights. Operators that produced a new best (or an
// accepted improvement) get multiplicative rewards; weights are renormalized
// periodically and stay strictly positive.
struct OperatorBank {
  std::vector<double> removal_weights = std::vector<double>(kNumRemovalOps, 1.0);
  std::vector<double> insertion_weights = std::vector<double>(kNumInsertionOps, 1.0);
  double reward_best = 0.2;
  double reward_improve = 0.1;
  int renormalize_every = 100;

  RemovalOp pick_removal(Rng& rng) {
    return static_cast<RemovalOp>(rng.pick_weighted(removal_weights));
  }
  InsertionOp pick_insertion(Rng& rng) {
    return static_cast<InsertionOp>(rng.pick_weighted(insertion_weights));
  }
  void reward(RemovalOp rem, InsertionOp ins, double factor);
  void maybe_renormalize(int iteration);
};

struct AnnealingSchedule {
  double initial_temperature = 1.0;
  double cooling = 0.999;  // in (0, 1)
  int iteration = 0;

  double temperature() const;
  // Sized so that a 5% worsening of the starting primary objective is
  // accepted with probability one half.
  static AnnealingSchedule calibrated(double start_primary, double cooling);
};

struct AlnsParams {
  int iterations = 1000;
  DestroyProportion proportion{};
  double cooling = 0.999;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Solutions with pairwise distinct route structures (start times ignored).
class RouteSet {
 public:
  bool add(const EvaluatedSolution& solution) {
    if (!keys_.insert(solution.route_key()).second) return false;
    members_.push_back(solution);
    return true;
  }
  const std::vector<EvaluatedSolution>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<EvaluatedSolution> members_;
  std::unordered_set<std::string> keys_;
};

struct DestroyResult {
  EvaluatedSolution partial;
  std::vector<int> removed;             // service ids
  std::vector<int> previous_caregiver;  // parallel to removed
};

// Removes `count` services (route-based operators may remove more) and
// re-schedules the affected routes under the direction's scheduler.
DestroyResult destroy(const EvaluatedSolution& solution, RemovalOp op, LexDirection direction,
                      int count, Rng& rng);

// Reinserts all removed services at feasible positions, greedily by the
// lexicographic objective delta. Returns nullopt when some service has no
// feasible position left.
std::optional<EvaluatedSolution> repair(const DestroyResult& destroyed, InsertionOp op,
                                        LexDirection direction, Rng& rng);

struct AlnsResult {
  EvaluatedSolution best;
  int iterations_run = 0;
  int discarded = 0;
};

// One adaptive large neighborhood search run: destroy/repair with weighted
// operator selection and simulated-annealing acceptance against the best
// solution; every repaired solution with a new route structure lands in
// `pool`.
AlnsResult alns_run(LexDirection direction, EvaluatedSolution start, RouteSet& pool,
                    const AlnsParams& params, Rng& rng);

}  // namespace hcsp

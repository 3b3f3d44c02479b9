#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsp/instance.hpp"

namespace hcsp {

// Objective pair (f1, f2): schedule cost in minutes and user welfare in
// weighted units. Both are exact integers: no tolerances anywhere.
struct ObjectivePair {
  std::int64_t cost = 0;
  std::int64_t welfare = 0;

  bool operator==(const ObjectivePair&) const = default;
  auto operator<=>(const ObjectivePair&) const = default;
};

// a dominates b: no worse in both objectives, strictly better in one.
inline bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
  return a.cost <= b.cost && a.welfare <= b.welfare && a != b;
}

struct ObjectiveWeights {
  std::int64_t overtime = 1;    // weight of caregiver overtime in f1
  std::int64_t paid_time = 1;   // weight of paid working time in f1
  std::int64_t affinity = -1;   // negative: higher affinity lowers f2
  std::int64_t penalty = 1;     // weight of soft-window deviation in f2

  // The affinity weight is sized from the instance so that one affinity level
  // always outweighs the largest possible total soft-window penalization.
  static ObjectiveWeights for_instance(const Instance& instance);
};

enum class LexDirection { WelfareCost, CostWelfare };

inline std::int64_t primary(const ObjectivePair& p, LexDirection d) {
  return d == LexDirection::WelfareCost ? p.welfare : p.cost;
}
inline std::int64_t secondary(const ObjectivePair& p, LexDirection d) {
  return d == LexDirection::WelfareCost ? p.cost : p.welfare;
}
inline bool lex_less(const ObjectivePair& a, const ObjectivePair& b, LexDirection d) {
  if (primary(a, d) != primary(b, d)) return primary(a, d) < primary(b, d);
  return secondary(a, d) < secondary(b, d);
}

// One caregiver-day: ordered services with start times.
struct Route {
  int caregiver_id = 0;
  int day = 1;
  std::vector<int> services;
  std::vector<int> start_times;

  bool empty() const { return services.empty(); }
  int size() const { return static_cast<int>(services.size()); }
};

// The single largest break of a caregiver-day and whether it is unpaid.
struct BreakInfo {
  int largest = 0;     // length of the largest gap between consecutive services
  bool unpaid = false; // true iff largest >= pi_min
  int deducted = 0;    // largest if unpaid, else 0
  int gap_index = -1;  // earliest maximal gap: between services[i] and services[i+1]
};

struct DayMetrics {
  BreakInfo brk;
  int day_start = 0;  // start of first service
  int day_end = 0;    // end of last service
  int span = 0;       // day_end - day_start
  int paid = 0;       // span - deducted
  std::int64_t penalty = 0;   // soft-window deviations of the route's services
  std::int64_t affinity = 0;  // summed affinity levels of the route's services
};

// Derives breaks, paid time and per-route objective contributions for one
// caregiver-day. Empty routes contribute nothing.
DayMetrics compute_day_metrics(const Route& route, const Instance& instance);

// Routes for every (caregiver, day) cell, dense.
struct Solution {
  std::vector<Route> routes;

  static Solution empty_solution(const Instance& instance);

  static std::size_t slot(int caregiver_id, int day) {
    return static_cast<std::size_t>(caregiver_id - 1) * kDaysPerWeek + (day - 1);
  }
  Route& route(int caregiver_id, int day) { return routes[slot(caregiver_id, day)]; }
  const Route& route(int caregiver_id, int day) const { return routes[slot(caregiver_id, day)]; }

  // Canonical key of the route structure only (assignments and orders, not
  // start times). Two solutions with equal keys have equal routes.
  std::string route_key() const;
};

struct Violation {
  int constraint = 0;  // model constraint family that is violated
  std::string message;
};

// Full feasibility check: coverage, compatibility, day membership, hard
// windows, travel-time ordering, caregiver availability and daily maxima.
// Empty result = feasible.
std::vector<Violation> check_feasibility(const Solution& solution, const Instance& instance);

// Full evaluation: f1 = overtime + paid time, f2 = affinity + penalization.
// Throws std::invalid_argument if some service is missing or duplicated.
ObjectivePair evaluate(const Solution& solution, const Instance& instance,
                       const ObjectiveWeights& weights);

// Solution bundled with cached per-route metrics and objective values.
// replace_route updates the caches incrementally; the result is always
// identical to a full re-evaluation.
class EvaluatedSolution {
 public:
  EvaluatedSolution(Solution solution, const Instance& instance, const ObjectiveWeights& weights);

  const Solution& solution() const { return solution_; }
  const Instance& instance() const { return *instance_; }
  const ObjectiveWeights& weights() const { return weights_; }
  const ObjectivePair& objectives() const { return objectives_; }

  const DayMetrics& metrics(int caregiver_id, int day) const {
    return metrics_[Solution::slot(caregiver_id, day)];
  }
  std::int64_t weekly_paid(int caregiver_id) const { return weekly_paid_[caregiver_id - 1]; }
  std::int64_t overtime(int caregiver_id) const {
    const std::int64_t extra =
        weekly_paid_[caregiver_id - 1] - instance_->caregiver(caregiver_id).weekly_contract;
    return extra > 0 ? extra : 0;
  }

  void replace_route(Route new_route);
  std::string route_key() const { return solution_.route_key(); }

  // Objectives the solution would have after replacing one route, without
  // mutating anything. Metrics must belong to the candidate route.
  ObjectivePair objectives_if_replaced(const Route& new_route,
                                       const DayMetrics& new_metrics) const;

 private:
  Solution solution_;
  const Instance* instance_;
  ObjectiveWeights weights_;
  std::vector<DayMetrics> metrics_;
  std::vector<std::int64_t> weekly_paid_;
  ObjectivePair objectives_;

  void recompute_objectives();
};

// Solution file I/O (routes, start times and derived metrics).
Json solution_to_json(const EvaluatedSolution& solution, const std::string& instance_name);
Solution solution_from_json(const Json& j, const Instance& instance);

}  // namespace hcsp

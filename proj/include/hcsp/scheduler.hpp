#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hcsp/instance.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

// Earliest/latest feasible start per position of a fixed service order.
// Earliest: forward pass chaining duration + travel from max(availability,
// hard window). Latest: backward pass from min(availability, hard window).
struct ScheduleBounds {
  bool feasible = false;
  std::vector<int> earliest;
  std::vector<int> latest;
};

ScheduleBounds compute_bounds(std::span<const int> order, const Instance& instance,
                              const Caregiver& caregiver, int day);

enum class SchedulePriority {
  PenaltyFirst,  // min soft-window penalization, then min cost
  CostFirst,     // min cost (span minus unpaid break), then min penalization
};

// Exact lexicographic optimizer for the start times of a fixed order.
// Returns the start times, or nullopt when the order cannot be scheduled
// (window chain infeasible, or no schedule fits the caregiver's daily
// maximum). Ties are broken toward lexicographically earliest start times.
std::optional<std::vector<int>> schedule_fixed_order(std::span<const int> order,
                                                     const Instance& instance,
                                                     const Caregiver& caregiver, int day,
                                                     SchedulePriority priority);

inline std::optional<std::vector<int>> schedule_welfare_first(std::span<const int> order,
                                                              const Instance& instance,
                                                              const Caregiver& caregiver,
                                                              int day) {
  return schedule_fixed_order(order, instance, caregiver, day, SchedulePriority::PenaltyFirst);
}

inline std::optional<std::vector<int>> schedule_cost_first(std::span<const int> order,
                                                           const Instance& instance,
                                                           const Caregiver& caregiver, int day) {
  return schedule_fixed_order(order, instance, caregiver, day, SchedulePriority::CostFirst);
}

inline SchedulePriority priority_for(LexDirection direction) {
  return direction == LexDirection::WelfareCost ? SchedulePriority::PenaltyFirst
                                                : SchedulePriority::CostFirst;
}

// Convenience: schedule an order and assemble the Route.
std::optional<Route> make_scheduled_route(std::vector<int> order, const Instance& instance,
                                          int caregiver_id, int day, SchedulePriority priority);

}  // namespace hcsp

#pragma once

#include <optional>
#include <vector>

#include "hcsp/instance.hpp"
#include "hcsp/rng.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

// Moves one service of a route in time: positive shift = delay, negative =
// advance. Other services move only as far as chaining forces them. Returns
// nullopt when the shifted service leaves its feasible start range. The
// result respects hard windows and availability; the caller still has to
// check the daily maximum.
std::optional<Route> shift_service(const Route& route, const Instance& instance, int position,
                                   int shift);

// Analysis of how far one service can be delayed/advanced without (for the
// delay branch) increasing the route's soft-window penalization.
struct WelfareMoveOptions {
  bool movable = false;
  int max_delay = 0;    // own soft window and chain bound
  int max_advance = 0;
  std::vector<int> delay_breakpoints;    // delays at which the route pen can change
  std::vector<int> advance_breakpoints;  // advances, informational
  int best_delay = 0;  // largest breakpoint with pen(delta) <= pen(0)
};

WelfareMoveOptions welfare_move_options(const Route& route, const Instance& instance,
                                        int position);

// The four cost-move options: delays that shrink later gaps or grow the
// preceding gap to an unpaid break, advances that shrink earlier gaps or grow
// the following gap to an unpaid break.
struct CostMoveOption {
  enum class Kind {
    DelayShrinkLater,
    DelayGrowPreceding,
    AdvanceShrinkEarlier,
    AdvanceGrowFollowing,
  };
  Kind kind;
  int min_shift = 0;  // inclusive, in minutes (magnitude)
  int max_shift = 0;
};

struct CostMoveAnalysis {
  bool movable = false;
  int max_delay = 0;    // latest[pos] - t
  int max_advance = 0;  // t - earliest[pos]
  std::vector<CostMoveOption> options;
};

CostMoveAnalysis cost_move_options(const Route& route, const Instance& instance, int position);

// Random-route, random-service move generators. Every emitted candidate is
// feasible; candidates differ from the input only in start times.
std::vector<EvaluatedSolution> improve_welfare_move(const EvaluatedSolution& solution, Rng& rng);
std::vector<EvaluatedSolution> improve_cost_move(const EvaluatedSolution& solution, Rng& rng);

// Deterministic application of one move branch (used by the generators and
// directly by tests): returns the candidate solution for an explicit shift.
std::optional<EvaluatedSolution> apply_route_shift(const EvaluatedSolution& solution,
                                                   int caregiver_id, int day, int position,
                                                   int shift);

}  // namespace hcsp

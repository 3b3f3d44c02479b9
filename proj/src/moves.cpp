#include "hcsp/moves.hpp"

#include <algorithm>

#include "hcsp/scheduler.hpp"

namespace hcsp {

namespace {

int link_between(const Route& r, const Instance& inst, int i) {
  return inst.service(r.services[i]).duration + inst.travel(r.services[i], r.services[i + 1]);
}

int gap_after(const Route& r, const Instance& inst, int i) {
  return r.start_times[i + 1] - r.start_times[i] - link_between(r, inst, i);
}

std::int64_t route_penalty(const Route& r, const Instance& inst) {
  return compute_day_metrics(r, inst).penalty;
}

// Largest delay of a service currently starting at t that does not increase
// its own soft-window deviation. v(t) = max(0, A - t) + max(0, t + dur - end).
int safe_delay(const TimeWindow& soft, int dur, int t) {
  const int a = soft.start;
  const int b = soft.end - dur;
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  if (t >= hi) return 0;
  if (t >= lo) return hi - t;
  return hi + lo - 2 * t;
}

// Mirror image for advances.
int safe_advance(const TimeWindow& soft, int dur, int t) {
  const int a = soft.start;
  const int b = soft.end - dur;
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  if (t <= lo) return 0;
  if (t <= hi) return t - lo;
  return 2 * t - hi - lo;
}

bool route_fits_daily_max(const Route& r, const Instance& inst) {
  const DayMetrics m = compute_day_metrics(r, inst);
  return m.paid <= inst.caregiver(r.caregiver_id).daily_max[r.day - 1];
}

}  // namespace

std::optional<Route> shift_service(const Route& route, const Instance& instance, int position,
                                   int shift) {
  if (shift == 0) return route;
  const ScheduleBounds b = compute_bounds(route.services, instance,
                                          instance.caregiver(route.caregiver_id), route.day);
  if (!b.feasible) return std::nullopt;

  Route r = route;
  const int m = r.size();
  r.start_times[position] += shift;
  if (r.start_times[position] < b.earliest[position] ||
      r.start_times[position] > b.latest[position])
    return std::nullopt;
  if (shift > 0) {
    for (int k = position + 1; k < m; ++k)
      r.start_times[k] =
          std::max(r.start_times[k], r.start_times[k - 1] + link_between(r, instance, k - 1));
  } else {
    for (int k = position - 1; k >= 0; --k)
      r.start_times[k] =
          std::min(r.start_times[k], r.start_times[k + 1] - link_between(r, instance, k));
  }
  return r;
}

WelfareMoveOptions welfare_move_options(const Route& route, const Instance& instance,
                                        int position) {
  WelfareMoveOptions opt;
  const ScheduleBounds b = compute_bounds(route.services, instance,
                                          instance.caregiver(route.caregiver_id), route.day);
  if (!b.feasible) return opt;

  const int m = route.size();
  const int t = route.start_times[position];
  const Service& s = instance.service(route.services[position]);
  const TimeWindow soft = instance.soft_window(s.id, route.day);

  opt.max_delay = std::min(std::max(0, soft.end - s.duration - t), b.latest[position] - t);
  opt.max_advance = std::min(std::max(0, t - soft.start), t - b.earliest[position]);
  opt.movable = opt.max_delay > 0 || opt.max_advance > 0;
  if (!opt.movable) return opt;

  // Delay candidates: for every downstream service, the largest delay that
  // does not yet push it past its safe range; plus the delay bound itself.
  if (opt.max_delay > 0) {
    int slack = 0;
    for (int k = position; k < m; ++k) {
      if (k > position) slack += gap_after(route, instance, k - 1);
      const Service& sk = instance.service(route.services[k]);
      const TimeWindow soft_k = instance.soft_window(sk.id, route.day);
      const long long cand =
          static_cast<long long>(slack) + safe_delay(soft_k, sk.duration, route.start_times[k]);
      if (cand >= 1 && cand <= opt.max_delay)
        opt.delay_breakpoints.push_back(static_cast<int>(cand));
    }
    opt.delay_breakpoints.push_back(opt.max_delay);
    std::sort(opt.delay_breakpoints.begin(), opt.delay_breakpoints.end());
    opt.delay_breakpoints.erase(
        std::unique(opt.delay_breakpoints.begin(), opt.delay_breakpoints.end()),
        opt.delay_breakpoints.end());

    const std::int64_t pen0 = route_penalty(route, instance);
    for (int cand : opt.delay_breakpoints) {
      const auto shifted = shift_service(route, instance, position, cand);
      if (shifted && route_penalty(*shifted, instance) <= pen0)
        opt.best_delay = std::max(opt.best_delay, cand);
    }
  }

  // Advance candidates (informational; the advance branch runs to its bound
  // even when the penalization grows, trading welfare for cost).
  if (opt.max_advance > 0) {
    int slack = 0;
    for (int k = position; k >= 0; --k) {
      if (k < position) slack += gap_after(route, instance, k);
      const Service& sk = instance.service(route.services[k]);
      const TimeWindow soft_k = instance.soft_window(sk.id, route.day);
      const long long cand = static_cast<long long>(slack) +
                             safe_advance(soft_k, sk.duration, route.start_times[k]);
      if (cand >= 1 && cand <= opt.max_advance)
        opt.advance_breakpoints.push_back(static_cast<int>(cand));
    }
    opt.advance_breakpoints.push_back(opt.max_advance);
    std::sort(opt.advance_breakpoints.begin(), opt.advance_breakpoints.end());
    opt.advance_breakpoints.erase(
        std::unique(opt.advance_breakpoints.begin(), opt.advance_breakpoints.end()),
        opt.advance_breakpoints.end());
  }
  return opt;
}

CostMoveAnalysis cost_move_options(const Route& route, const Instance& instance, int position) {
  CostMoveAnalysis res;
  const ScheduleBounds b = compute_bounds(route.services, instance,
                                          instance.caregiver(route.caregiver_id), route.day);
  if (!b.feasible) return res;

  const int m = route.size();
  const int t = route.start_times[position];
  const int pi_min = instance.min_unpaid_break;
  res.max_delay = b.latest[position] - t;
  res.max_advance = t - b.earliest[position];
  res.movable = res.max_delay > 0 || res.max_advance > 0;

  int later_slack = 0;
  for (int k = position; k + 1 < m; ++k) later_slack += gap_after(route, instance, k);
  int earlier_slack = 0;
  for (int k = 0; k < position; ++k) earlier_slack += gap_after(route, instance, k);

  using Kind = CostMoveOption::Kind;
  {
    const int hi = std::min(res.max_delay, later_slack);
    if (hi >= 1) res.options.push_back({Kind::DelayShrinkLater, 0, hi});
  }
  if (position > 0) {
    const int prev_gap = gap_after(route, instance, position - 1);
    const int lo = std::max(0, pi_min - prev_gap);
    if (res.max_delay >= std::max(lo, 1))
      res.options.push_back({Kind::DelayGrowPreceding, lo, res.max_delay});
  }
  {
    const int hi = std::min(res.max_advance, earlier_slack);
    if (hi >= 1) res.options.push_back({Kind::AdvanceShrinkEarlier, 0, hi});
  }
  if (position + 1 < m) {
    const int next_gap = gap_after(route, instance, position);
    const int lo = std::max(0, pi_min - next_gap);
    if (res.max_advance >= std::max(lo, 1))
      res.options.push_back({Kind::AdvanceGrowFollowing, lo, res.max_advance});
  }
  return res;
}

std::optional<EvaluatedSolution> apply_route_shift(const EvaluatedSolution& solution,
                                                   int caregiver_id, int day, int position,
                                                   int shift) {
  const Instance& inst = solution.instance();
  const Route& route = solution.solution().route(caregiver_id, day);
  auto shifted = shift_service(route, inst, position, shift);
  if (!shifted || !route_fits_daily_max(*shifted, inst)) return std::nullopt;
  EvaluatedSolution candidate = solution;
  candidate.replace_route(std::move(*shifted));
  return candidate;
}

namespace {

// Uniform pick of a non-empty route; returns slot index or -1.
int pick_route(const Solution& sol, Rng& rng) {
  std::vector<int> nonempty;
  for (std::size_t i = 0; i < sol.routes.size(); ++i)
    if (!sol.routes[i].empty()) nonempty.push_back(static_cast<int>(i));
  if (nonempty.empty()) return -1;
  return nonempty[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(nonempty.size()) - 1))];
}

}  // namespace

std::vector<EvaluatedSolution> improve_welfare_move(const EvaluatedSolution& solution, Rng& rng) {
  std::vector<EvaluatedSolution> out;
  const int slot = pick_route(solution.solution(), rng);
  if (slot < 0) return out;
  const Route& route = solution.solution().routes[static_cast<std::size_t>(slot)];
  const int position = rng.uniform_int(0, route.size() - 1);

  const WelfareMoveOptions opt = welfare_move_options(route, solution.instance(), position);
  if (!opt.movable) return out;

  if (opt.best_delay > 0) {
    const int shift = rng.uniform_int(0, opt.best_delay);
    if (shift > 0) {
      auto cand = apply_route_shift(solution, route.caregiver_id, route.day, position, shift);
      if (cand) out.push_back(std::move(*cand));
    }
  }
  if (opt.max_advance > 0) {
    const int shift = rng.uniform_int(0, opt.max_advance);
    if (shift > 0) {
      auto cand = apply_route_shift(solution, route.caregiver_id, route.day, position, -shift);
      if (cand) out.push_back(std::move(*cand));
    }
  }
  return out;
}

std::vector<EvaluatedSolution> improve_cost_move(const EvaluatedSolution& solution, Rng& rng) {
  std::vector<EvaluatedSolution> out;
  const int slot = pick_route(solution.solution(), rng);
  if (slot < 0) return out;
  const Route& route = solution.solution().routes[static_cast<std::size_t>(slot)];
  const int position = rng.uniform_int(0, route.size() - 1);

  const CostMoveAnalysis analysis = cost_move_options(route, solution.instance(), position);
  if (!analysis.movable) return out;

  using Kind = CostMoveOption::Kind;
  for (const CostMoveOption& o : analysis.options) {
    const int magnitude = rng.uniform_int(o.min_shift, o.max_shift);
    if (magnitude <= 0) continue;
    const bool is_delay = o.kind == Kind::DelayShrinkLater || o.kind == Kind::DelayGrowPreceding;
    auto cand = apply_route_shift(solution, route.caregiver_id, route.day, position,
                                  is_delay ? magnitude : -magnitude);
    if (cand) out.push_back(std::move(*cand));
  }
  return out;
}

}  // namespace hcsp

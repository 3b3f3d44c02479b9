#include "hcsp/alns.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcsp/scheduler.hpp"

namespace hcsp {

const char* removal_op_name(RemovalOp op) {
  switch (op) {
    case RemovalOp::Random: return "random_removal";
    case RemovalOp::Related: return "related_removal";
    case RemovalOp::Cost: return "cost_removal";
    case RemovalOp::OneRoute: return "one_route_removal";
    case RemovalOp::TwoRoute: return "two_route_removal";
  }
  return "?";
}

const char* insertion_op_name(InsertionOp op) {
  switch (op) {
    case InsertionOp::BasicGreedy: return "basic_greedy";
    case InsertionOp::RandomGreedy: return "random_greedy";
    case InsertionOp::DifferentCaregiverBasicGreedy: return "different_caregiver_bg";
    case InsertionOp::DifferentCaregiverRandomGreedy: return "different_caregiver_rg";
  }
  return "?";
}

int DestroyProportion::count(int n_services, Rng& rng) const {
  double frac = percent / 100.0;
  if (automatic) frac *= rng.uniform01_open_low();
  frac = std::clamp(frac, 0.0, 1.0);
  const int k = static_cast<int>(std::ceil(frac * n_services));
  return std::clamp(k, 1, n_services);
}

DestroyProportion DestroyProportion::parse(const std::string& text) {
  DestroyProportion p;
  std::string t = text;
  p.automatic = t.rfind("auto_", 0) == 0 || t.rfind("auto", 0) == 0;
  if (p.automatic) t = t.substr(t.find('_') != std::string::npos ? t.find('_') + 1 : 4);
  if (!t.empty() && t.back() == '%') {
    p.percent = std::stod(t.substr(0, t.size() - 1));
  } else {
    const double v = std::stod(t);
    p.percent = v <= 1.0 ? v * 100.0 : v;
  }
  if (p.percent <= 0.0 || p.percent > 100.0)
    throw std::invalid_argument("destroy proportion out of (0, 100%]: " + text);
  return p;
}

std::string DestroyProportion::to_string() const {
  std::string s = automatic ? "auto_" : "";
  double rounded = std::round(percent * 100.0) / 100.0;
  std::string num = std::to_string(rounded);
  num.erase(num.find_last_not_of('0') + 1);
  if (!num.empty() && num.back() == '.') num.pop_back();
  return s + num + "%";
}

void OperatorBank::reward(RemovalOp rem, InsertionOp ins, double factor) {
  removal_weights[static_cast<std::size_t>(rem)] *= 1.0 + factor;
  insertion_weights[static_cast<std::size_t>(ins)] *= 1.0 + factor;
}

void OperatorBank::maybe_renormalize(int iteration) {
  if (renormalize_every <= 0 || iteration == 0 || iteration % renormalize_every != 0) return;
  const auto normalize = [](std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    if (total <= 0.0) return;
    const double scale = static_cast<double>(w.size()) / total;
    for (double& x : w) x = std::max(x * scale, 1e-6);
  };
  normalize(removal_weights);
  normalize(insertion_weights);
}

double AnnealingSchedule::temperature() const {
  return initial_temperature * std::pow(cooling, iteration);
}

AnnealingSchedule AnnealingSchedule::calibrated(double start_primary, double cooling) {
  AnnealingSchedule s;
  s.cooling = cooling;
  s.initial_temperature = std::max(1.0, 0.05 * std::abs(start_primary) / std::log(2.0));
  return s;
}

namespace {

std::vector<int> assigned_services(const Solution& sol) {
  std::vector<int> ids;
  for (const Route& r : sol.routes) ids.insert(ids.end(), r.services.begin(), r.services.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

int caregiver_of(const Solution& sol, int service_id) {
  for (const Route& r : sol.routes)
    for (int s : r.services)
      if (s == service_id) return r.caregiver_id;
  return 0;
}

// Removes one service from its route and re-schedules the rest of the route
// under the direction's scheduler. Falls back to clearing the route if the
// reduced order is unschedulable (possible only with non-metric travel).
std::vector<int> remove_and_reschedule(EvaluatedSolution& sol, int service_id,
                                       LexDirection direction) {
  const Instance& inst = sol.instance();
  std::vector<int> extra_removed;
  for (const Route& r : sol.solution().routes) {
    const auto it = std::find(r.services.begin(), r.services.end(), service_id);
    if (it == r.services.end()) continue;
    std::vector<int> order = r.services;
    order.erase(order.begin() + (it - r.services.begin()));
    auto replacement =
        make_scheduled_route(order, inst, r.caregiver_id, r.day, priority_for(direction));
    if (!replacement) {
      extra_removed = order;
      replacement = Route{r.caregiver_id, r.day, {}, {}};
    }
    sol.replace_route(std::move(*replacement));
    return extra_removed;
  }
  return extra_removed;
}

double relatedness(const Instance& inst, int a, int b, int travel_max) {
  const Service& sa = inst.service(a);
  const Service& sb = inst.service(b);
  const double mid_a = 0.5 * (sa.hard.start + sa.hard.end);
  const double mid_b = 0.5 * (sb.hard.start + sb.hard.end);
  return static_cast<double>(inst.travel(a, b)) / std::max(1, travel_max) +
         std::abs(mid_a - mid_b) / kMinutesPerDay + (sa.day != sb.day ? 1.0 : 0.0);
}

struct InsertionChoice {
  bool found = false;
  ObjectivePair objectives;  // solution objectives after the insertion
  Route route;
};

// Best feasible position of one service over the allowed caregivers.
InsertionChoice best_position(const EvaluatedSolution& sol, int service_id,
                              LexDirection direction, int forbidden_caregiver) {
  const Instance& inst = sol.instance();
  const Service& svc = inst.service(service_id);
  InsertionChoice best;
  for (int cg = 1; cg <= inst.num_caregivers(); ++cg) {
    if (cg == forbidden_caregiver) continue;
    if (!inst.caregiver(cg).serves(service_id)) continue;
    const Route& route = sol.solution().route(cg, svc.day);
    for (int slot = 0; slot <= route.size(); ++slot) {
      std::vector<int> order = route.services;
      order.insert(order.begin() + slot, service_id);
      auto candidate =
          make_scheduled_route(std::move(order), inst, cg, svc.day, priority_for(direction));
      if (!candidate) continue;
      const DayMetrics metrics = compute_day_metrics(*candidate, inst);
      const ObjectivePair obj = sol.objectives_if_replaced(*candidate, metrics);
      if (!best.found || lex_less(obj, best.objectives, direction)) {
        best.found = true;
        best.objectives = obj;
        best.route = std::move(*candidate);
      }
    }
  }
  return best;
}

}  // namespace

DestroyResult destroy(const EvaluatedSolution& solution, RemovalOp op, LexDirection direction,
                      int count, Rng& rng) {
  DestroyResult result{solution, {}, {}};
  const Instance& inst = solution.instance();
  std::vector<int> assigned = assigned_services(solution.solution());
  count = std::min<int>(count, static_cast<int>(assigned.size()));
  if (count <= 0 || assigned.empty()) return result;

  const auto mark_removed = [&](int sid) {
    result.removed.push_back(sid);
    result.previous_caregiver.push_back(caregiver_of(result.partial.solution(), sid));
    for (int extra : remove_and_reschedule(result.partial, sid, direction)) {
      result.removed.push_back(extra);
      result.previous_caregiver.push_back(caregiver_of(solution.solution(), extra));
    }
  };

  switch (op) {
    case RemovalOp::Random: {
      rng.shuffle(assigned);
      for (int i = 0; i < count; ++i) mark_removed(assigned[i]);
      break;
    }
    case RemovalOp::Related: {
      int travel_max = 1;
      for (int a = 1; a <= inst.num_services(); ++a)
        for (int b = 1; b <= inst.num_services(); ++b)
          travel_max = std::max(travel_max, inst.travel(a, b));
      mark_removed(assigned[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(assigned.size()) - 1))]);
      while (static_cast<int>(result.removed.size()) < count) {
        const int seed_id = result.removed[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(result.removed.size()) - 1))];
        const std::vector<int> remaining = assigned_services(result.partial.solution());
        if (remaining.empty()) break;
        int pick = remaining.front();
        double best = 1e18;
        for (int s : remaining) {
          const double d = relatedness(inst, seed_id, s, travel_max);
          if (d < best) {
            best = d;
            pick = s;
          }
        }
        mark_removed(pick);
      }
      break;
    }
    case RemovalOp::Cost: {
      while (static_cast<int>(result.removed.size()) < count) {
        const std::vector<int> remaining = assigned_services(result.partial.solution());
        if (remaining.empty()) break;
        // Remove the service whose deletion improves the objective the most.
        int pick = remaining.front();
        bool have = false;
        ObjectivePair best_obj{};
        for (int s : remaining) {
          EvaluatedSolution probe = result.partial;
          remove_and_reschedule(probe, s, direction);
          if (!have || lex_less(probe.objectives(), best_obj, direction)) {
            have = true;
            best_obj = probe.objectives();
            pick = s;
          }
        }
        mark_removed(pick);
      }
      break;
    }
    case RemovalOp::OneRoute: {
      while (static_cast<int>(result.removed.size()) < count) {
        std::vector<std::size_t> nonempty;
        const auto& routes = result.partial.solution().routes;
        for (std::size_t i = 0; i < routes.size(); ++i)
          if (!routes[i].empty()) nonempty.push_back(i);
        if (nonempty.empty()) break;
        const std::size_t slot = nonempty[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(nonempty.size()) - 1))];
        for (int sid : std::vector<int>(routes[slot].services)) mark_removed(sid);
      }
      break;
    }
    case RemovalOp::TwoRoute: {
      std::vector<std::size_t> nonempty;
      const auto& routes = result.partial.solution().routes;
      for (std::size_t i = 0; i < routes.size(); ++i)
        if (!routes[i].empty()) nonempty.push_back(i);
      rng.shuffle(nonempty);
      const std::size_t take = std::min<std::size_t>(2, nonempty.size());
      for (std::size_t k = 0; k < take; ++k)
        for (int sid : std::vector<int>(result.partial.solution().routes[nonempty[k]].services))
          mark_removed(sid);
      break;
    }
  }
  return result;
}

std::optional<EvaluatedSolution> repair(const DestroyResult& destroyed, InsertionOp op,
                                        LexDirection direction, Rng& rng) {
  EvaluatedSolution sol = destroyed.partial;
  std::vector<int> remaining = destroyed.removed;
  std::vector<int> prev_cg = destroyed.previous_caregiver;

  const bool different_caregiver = op == InsertionOp::DifferentCaregiverBasicGreedy ||
                                   op == InsertionOp::DifferentCaregiverRandomGreedy;
  const bool random_pick =
      op == InsertionOp::RandomGreedy || op == InsertionOp::DifferentCaregiverRandomGreedy;

  while (!remaining.empty()) {
    std::size_t chosen_idx = 0;
    InsertionChoice chosen;

    if (random_pick) {
      chosen_idx = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(remaining.size()) - 1));
      const int sid = remaining[chosen_idx];
      chosen = best_position(sol, sid, direction,
                             different_caregiver ? prev_cg[chosen_idx] : 0);
      if (!chosen.found && different_caregiver)
        chosen = best_position(sol, sid, direction, 0);
    } else {
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        InsertionChoice c = best_position(sol, remaining[i], direction,
                                          different_caregiver ? prev_cg[i] : 0);
        if (!c.found && different_caregiver)
          c = best_position(sol, remaining[i], direction, 0);
        if (c.found && (!chosen.found || lex_less(c.objectives, chosen.objectives, direction))) {
          chosen = std::move(c);
          chosen_idx = i;
        }
      }
    }

    if (!chosen.found) return std::nullopt;
    sol.replace_route(std::move(chosen.route));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_idx));
    prev_cg.erase(prev_cg.begin() + static_cast<std::ptrdiff_t>(chosen_idx));
  }
  return sol;
}

AlnsResult alns_run(LexDirection direction, EvaluatedSolution start, RouteSet& pool,
                    const AlnsParams& params, Rng& rng) {
  const int n_services = start.instance().num_services();
  OperatorBank bank;
  AnnealingSchedule schedule = AnnealingSchedule::calibrated(
      static_cast<double>(primary(start.objectives(), direction)), params.cooling);

  EvaluatedSolution best = start;
  EvaluatedSolution current = std::move(start);
  std::int64_t sec_min = secondary(best.objectives(), direction);
  std::int64_t sec_max = sec_min;

  AlnsResult result{best};
  for (int iter = 0; iter < params.iterations; ++iter) {
    if (params.deadline && std::chrono::steady_clock::now() >= *params.deadline) break;
    ++result.iterations_run;
    schedule.iteration = iter;

    const RemovalOp rem = bank.pick_removal(rng);
    InsertionOp ins = bank.pick_insertion(rng);
    const int count = params.proportion.count(n_services, rng);

    const DestroyResult destroyed = destroy(current, rem, direction, count, rng);
    std::optional<EvaluatedSolution> repaired = repair(destroyed, ins, direction, rng);
    for (int alt = 0; !repaired && alt < kNumInsertionOps; ++alt) {
      const auto other = static_cast<InsertionOp>(alt);
      if (other == ins) continue;
      repaired = repair(destroyed, other, direction, rng);
      if (repaired) ins = other;
    }
    if (!repaired) {
      ++result.discarded;
      continue;
    }

    sec_min = std::min(sec_min, secondary(repaired->objectives(), direction));
    sec_max = std::max(sec_max, secondary(repaired->objectives(), direction));

    const bool new_best = lex_less(repaired->objectives(), best.objectives(), direction);
    if (new_best) best = *repaired;
    pool.add(*repaired);

    // Acceptance against the best solution, with the lexicographic difference
    // scalarized as: primary gap if nonzero, else secondary gap normalized by
    // its running range.
    const std::int64_t dp =
        primary(repaired->objectives(), direction) - primary(best.objectives(), direction);
    double delta;
    if (dp != 0) {
      delta = static_cast<double>(dp);
    } else {
      const std::int64_t ds =
          secondary(repaired->objectives(), direction) - secondary(best.objectives(), direction);
      delta = static_cast<double>(ds) / static_cast<double>(std::max<std::int64_t>(1, sec_max - sec_min));
    }
    const bool improved_current = lex_less(repaired->objectives(), current.objectives(), direction);
    const bool accept =
        delta <= 0.0 || rng.uniform01() < std::exp(-delta / schedule.temperature());
    if (accept) current = *repaired;

    if (new_best)
      bank.reward(rem, ins, bank.reward_best);
    else if (accept && improved_current)
      bank.reward(rem, ins, bank.reward_improve);
    bank.maybe_renormalize(iter + 1);
  }

  result.best = std::move(best);
  return result;
}

}  // namespace hcsp

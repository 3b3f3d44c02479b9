#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "hcsp/exact.hpp"
#include "hcsp/scheduler.hpp"

namespace hcsp {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Non-dominated (paid, penalty) schedules of one fixed order on the time grid.
struct GridSchedule {
  int paid = 0;
  std::int64_t penalty = 0;
  std::vector<int> times;
};

void grid_schedules_rec(const Instance& inst, const Caregiver& cg, int day,
                        const std::vector<int>& order, const ScheduleBounds& bounds, int step,
                        std::size_t pos, std::vector<int>& times,
                        std::vector<GridSchedule>& out) {
  if (pos == order.size()) {
    Route r{cg.id, day, order, times};
    const DayMetrics m = compute_day_metrics(r, inst);
    if (m.paid > cg.daily_max[day - 1]) return;
    out.push_back(GridSchedule{m.paid, m.penalty, times});
    return;
  }
  int lo = bounds.earliest[pos];
  if (pos > 0)
    lo = std::max(lo, times[pos - 1] + inst.service(order[pos - 1]).duration +
                          inst.travel(order[pos - 1], order[pos]));
  const int hi = bounds.latest[pos];
  for (int t = ((lo + step - 1) / step) * step; t <= hi; t += step) {
    times[pos] = t;
    grid_schedules_rec(inst, cg, day, order, bounds, step, pos + 1, times, out);
  }
}

std::vector<GridSchedule> pareto_filter_schedules(std::vector<GridSchedule> all) {
  std::stable_sort(all.begin(), all.end(), [](const GridSchedule& a, const GridSchedule& b) {
    if (a.paid != b.paid) return a.paid < b.paid;
    return a.penalty < b.penalty;
  });
  std::vector<GridSchedule> kept;
  std::int64_t best_pen = std::numeric_limits<std::int64_t>::max();
  for (GridSchedule& g : all) {
    if (g.penalty < best_pen) {
      best_pen = g.penalty;
      kept.push_back(std::move(g));
    }
  }
  return kept;
}

// All non-dominated (paid, penalty) route options of one caregiver-day set.
struct RouteOption {
  Route route;
  int paid = 0;
  std::int64_t penalty = 0;
};

std::vector<RouteOption> route_options(const Instance& inst, const Caregiver& cg, int day,
                                       std::vector<int> services, int step) {
  std::vector<RouteOption> options;
  std::sort(services.begin(), services.end());
  std::vector<GridSchedule> sched;
  do {
    const ScheduleBounds bounds = compute_bounds(services, inst, cg, day);
    if (!bounds.feasible) continue;
    std::vector<int> times(services.size(), 0);
    grid_schedules_rec(inst, cg, day, services, bounds, step, 0, times, sched);
    for (GridSchedule& g : pareto_filter_schedules(std::move(sched))) {
      options.push_back(RouteOption{Route{cg.id, day, services, g.times},
                                    g.paid, g.penalty});
    }
    sched.clear();
  } while (std::next_permutation(services.begin(), services.end()));

  // reduce across orders
  std::stable_sort(options.begin(), options.end(), [](const RouteOption& a, const RouteOption& b) {
    if (a.paid != b.paid) return a.paid < b.paid;
    return a.penalty < b.penalty;
  });
  std::vector<RouteOption> kept;
  std::int64_t best_pen = std::numeric_limits<std::int64_t>::max();
  for (RouteOption& o : options) {
    if (o.penalty < best_pen) {
      best_pen = o.penalty;
      kept.push_back(std::move(o));
    }
  }
  return kept;
}

// One way to run a whole day: routes per caregiver plus their aggregates.
struct DayPlan {
  std::vector<Route> routes;       // only non-empty ones
  std::vector<int> paid;           // per caregiver, index 0-based
  std::int64_t welfare = 0;        // affinity + penalty contribution
};

bool plan_dominated(const DayPlan& a, const DayPlan& b) {
  // true when b is componentwise no worse than a and strictly better somewhere
  bool strictly = false;
  if (b.welfare > a.welfare) return false;
  if (b.welfare < a.welfare) strictly = true;
  for (std::size_t i = 0; i < a.paid.size(); ++i) {
    if (b.paid[i] > a.paid[i]) return false;
    if (b.paid[i] < a.paid[i]) strictly = true;
  }
  return strictly;
}

void assignments_rec(const Instance& inst, const std::vector<int>& day_services,
                     std::size_t pos, std::vector<int>& choice,
                     const std::function<void(const std::vector<int>&)>& emit) {
  if (pos == day_services.size()) {
    emit(choice);
    return;
  }
  for (int cg = 1; cg <= inst.num_caregivers(); ++cg) {
    if (!inst.caregiver(cg).serves(day_services[pos])) continue;
    choice[pos] = cg;
    assignments_rec(inst, day_services, pos + 1, choice, emit);
  }
}

}  // namespace

EnumerationBackend::EnumerationBackend(const Instance& instance, int time_step, int max_services)
    : instance_(instance),
      weights_(ObjectiveWeights::for_instance(instance)),
      time_step_(std::max(1, time_step)),
      max_services_(max_services) {}

void EnumerationBackend::enumerate() {
  if (done_) return;
  done_ = true;
  const int n = instance_.num_services();
  if (n > max_services_)
    throw SizeBoundError("instance exceeds the exhaustive-search bound (" + std::to_string(n) +
                         " > " + std::to_string(max_services_) + " services)");

  // Per day: all Pareto-reduced day plans.
  std::vector<std::vector<DayPlan>> day_plans;
  std::vector<int> active_days;
  for (int day = 1; day <= kDaysPerWeek; ++day) {
    std::vector<int> services;
    for (const Service& s : instance_.services)
      if (s.day == day) services.push_back(s.id);
    if (services.empty()) continue;
    active_days.push_back(day);

    std::vector<DayPlan> plans;
    std::vector<int> choice(services.size(), 0);
    assignments_rec(
        instance_, services, 0, choice, [&](const std::vector<int>& assignment) {
          // group services per caregiver
          std::vector<std::vector<int>> by_cg(instance_.num_caregivers());
          for (std::size_t i = 0; i < services.size(); ++i)
            by_cg[static_cast<std::size_t>(assignment[i] - 1)].push_back(services[i]);

          std::vector<std::vector<RouteOption>> per_cg;
          std::vector<int> cg_ids;
          std::vector<std::int64_t> cg_affinity;
          for (int cg = 1; cg <= instance_.num_caregivers(); ++cg) {
            auto& mine = by_cg[static_cast<std::size_t>(cg - 1)];
            if (mine.empty()) continue;
            auto options = route_options(instance_, instance_.caregiver(cg), day, mine,
                                         time_step_);
            if (options.empty()) return;  // this assignment cannot be scheduled
            std::int64_t aff = 0;
            for (int sid : mine) aff += instance_.caregiver(cg).affinity_for(sid);
            per_cg.push_back(std::move(options));
            cg_ids.push_back(cg);
            cg_affinity.push_back(aff);
          }

          // cartesian product over caregivers
          std::vector<std::size_t> idx(per_cg.size(), 0);
          while (true) {
            DayPlan plan;
            plan.paid.assign(instance_.num_caregivers(), 0);
            for (std::size_t c = 0; c < per_cg.size(); ++c) {
              const RouteOption& opt = per_cg[c][idx[c]];
              plan.routes.push_back(opt.route);
              plan.paid[static_cast<std::size_t>(cg_ids[c] - 1)] = opt.paid;
              plan.welfare += weights_.affinity * cg_affinity[c] +
                              weights_.penalty * opt.penalty;
            }
            plans.push_back(std::move(plan));
            std::size_t c = 0;
            for (; c < idx.size(); ++c) {
              if (++idx[c] < per_cg[c].size()) break;
              idx[c] = 0;
            }
            if (c == idx.size()) break;
          }
        });

    // Pareto-reduce day plans over (paid vector, welfare).
    std::vector<bool> keep(plans.size(), true);
    for (std::size_t i = 0; i < plans.size(); ++i)
      for (std::size_t j = 0; j < plans.size() && keep[i]; ++j)
        if (j != i && plan_dominated(plans[i], plans[j])) keep[i] = false;
    std::vector<DayPlan> reduced;
    for (std::size_t i = 0; i < plans.size(); ++i)
      if (keep[i]) reduced.push_back(std::move(plans[i]));
    if (reduced.empty()) return;  // day unschedulable: no feasible solution
    day_plans.push_back(std::move(reduced));
  }

  // Cross-day combination.
  struct Combo {
    ObjectivePair objectives;
    std::vector<std::size_t> pick;
  };
  std::vector<Combo> combos;
  std::vector<std::size_t> pick(day_plans.size(), 0);
  std::vector<std::int64_t> weekly(instance_.num_caregivers(), 0);

  const std::function<void(std::size_t)> rec = [&](std::size_t di) {
    if (di == day_plans.size()) {
      ObjectivePair obj;
      for (int cg = 1; cg <= instance_.num_caregivers(); ++cg) {
        const std::int64_t paid = weekly[static_cast<std::size_t>(cg - 1)];
        obj.cost += weights_.paid_time * paid +
                    weights_.overtime *
                        std::max<std::int64_t>(
                            0, paid - instance_.caregiver(cg).weekly_contract);
      }
      for (std::size_t k = 0; k < day_plans.size(); ++k)
        obj.welfare += day_plans[k][pick[k]].welfare;
      combos.push_back(Combo{obj, pick});
      return;
    }
    for (std::size_t p = 0; p < day_plans[di].size(); ++p) {
      pick[di] = p;
      for (int cg = 1; cg <= instance_.num_caregivers(); ++cg)
        weekly[static_cast<std::size_t>(cg - 1)] +=
            day_plans[di][p].paid[static_cast<std::size_t>(cg - 1)];
      rec(di + 1);
      for (int cg = 1; cg <= instance_.num_caregivers(); ++cg)
        weekly[static_cast<std::size_t>(cg - 1)] -=
            day_plans[di][p].paid[static_cast<std::size_t>(cg - 1)];
    }
  };
  rec(0);

  // Non-dominated sweep over objective pairs.
  std::stable_sort(combos.begin(), combos.end(), [](const Combo& a, const Combo& b) {
    return a.objectives < b.objectives;
  });
  std::int64_t best_welfare = std::numeric_limits<std::int64_t>::max();
  for (const Combo& c : combos) {
    if (c.objectives.welfare >= best_welfare) continue;
    best_welfare = c.objectives.welfare;
    Solution sol = Solution::empty_solution(instance_);
    for (std::size_t k = 0; k < day_plans.size(); ++k)
      for (const Route& r : day_plans[k][c.pick[k]].routes)
        sol.route(r.caregiver_id, r.day) = r;
    pareto_.emplace_back(std::move(sol), instance_, weights_);
  }
}

const std::vector<EvaluatedSolution>& EnumerationBackend::pareto_solutions() {
  enumerate();
  return pareto_;
}

std::optional<EvaluatedSolution> EnumerationBackend::lexicographic(LexDirection direction) {
  enumerate();
  if (pareto_.empty()) return std::nullopt;
  // Sorted by cost ascending, welfare strictly descending.
  return direction == LexDirection::CostWelfare ? pareto_.front() : pareto_.back();
}

std::optional<EvaluatedSolution> EnumerationBackend::constrained(std::int64_t welfare_cap) {
  enumerate();
  for (const EvaluatedSolution& s : pareto_)
    if (s.objectives().welfare <= welfare_cap) return s;
  return std::nullopt;
}

EvaluatedSolution lexicographic_solve(ExactBackend& backend, LexDirection direction) {
  auto sol = backend.lexicographic(direction);
  if (!sol) throw std::runtime_error("lexicographic solve: instance is infeasible");
  return std::move(*sol);
}

ParetoArchive<EvaluatedSolution> augmecon2(
    ExactBackend& backend, int g2, double eps_augm, EpsilonSweepTrace* trace,
    const std::function<void(long long, std::int64_t, std::int64_t)>& grid_hook) {
  if (g2 < 1) throw std::invalid_argument("grid interval count must be >= 1");
  if (eps_augm < 1e-6 || eps_augm > 1e-3)
    throw std::invalid_argument("augmentation epsilon must lie in [1e-6, 1e-3]");

  ParetoArchive<EvaluatedSolution> archive;
  auto cw = backend.lexicographic(LexDirection::CostWelfare);
  auto wc = backend.lexicographic(LexDirection::WelfareCost);
  if (!cw || !wc) return archive;

  const std::int64_t ub2 = cw->objectives().welfare;  // worst welfare on the front
  const std::int64_t lb2 = wc->objectives().welfare;  // best attainable welfare
  const std::int64_t r2 = ub2 - lb2;
  if (trace) {
    trace->welfare_upper = ub2;
    trace->welfare_lower = lb2;
    trace->range = r2;
  }
  archive.update(cw->objectives(), *cw, "payoff");
  archive.update(wc->objectives(), *wc, "payoff");
  if (r2 == 0) return archive;

  // Integer-exact grid arithmetic: cap(i2) = floor(ub2 - i2*r2/g2); the
  // augmentation term eps*(slack/range) < 1 can never override a one-unit
  // cost difference, so lexicographic subproblem solves realize it exactly.
  const std::int64_t G = g2;
  long long i2 = 1;
  while (i2 <= G) {
    const std::int64_t cap_num = ub2 * G - static_cast<std::int64_t>(i2) * r2;
    const std::int64_t cap = floor_div(cap_num, G);
    if (grid_hook) grid_hook(i2, cap, r2);

    std::optional<EvaluatedSolution> sol;
    bool failed = false;
    try {
      sol = backend.constrained(cap);
    } catch (const std::exception& e) {
      failed = true;
      if (trace)
        trace->steps.push_back(Json{{"i2", i2}, {"cap", cap}, {"error", e.what()}});
    }
    if (failed) {  // skip conservatively, no bypass
      ++i2;
      continue;
    }
    if (!sol) {
      if (trace) trace->steps.push_back(Json{{"i2", i2}, {"cap", cap}, {"infeasible", true}});
      break;
    }

    archive.update(sol->objectives(), *sol, "grid");
    const std::int64_t slack_num = cap_num - G * sol->objectives().welfare;  // g2 * slack
    const std::int64_t bypass = slack_num >= 0 ? slack_num / r2 : 0;
    if (trace) {
      trace->grid_points_solved += 1;
      trace->grid_points_skipped += bypass;
      trace->steps.push_back(Json{{"i2", i2},
                                  {"cap", cap},
                                  {"cost", sol->objectives().cost},
                                  {"welfare", sol->objectives().welfare},
                                  {"bypass", bypass}});
    }
    i2 += bypass + 1;
  }
  return archive;
}

ParetoArchive<EvaluatedSolution> brute_force_front(const Instance& instance, int time_step,
                                                   int max_services) {
  EnumerationBackend backend(instance, time_step, max_services);
  ParetoArchive<EvaluatedSolution> archive;
  for (const EvaluatedSolution& s : backend.pareto_solutions())
    archive.update(s.objectives(), s, "enum");
  return archive;
}

// ---------------------------------------------------------------------------
// External solver adapter.
// ---------------------------------------------------------------------------

ExternalSolverBackend::ExternalSolverBackend(const Instance& instance,
                                             const ObjectiveWeights& weights,
                                             std::string command,
                                             std::filesystem::path workdir)
    : instance_(instance),
      weights_(weights),
      model_(build_milp(instance, weights)),
      command_(std::move(command)),
      workdir_(std::move(workdir)) {
  std::filesystem::create_directories(workdir_);
}

std::optional<std::map<std::string, double>> ExternalSolverBackend::run_solver(
    const std::filesystem::path& lp) const {
  std::filesystem::path sol = lp;
  sol.replace_extension(".sol");
  std::string cmd = command_;
  const auto replace_all = [&](const std::string& key, const std::string& value) {
    for (std::size_t pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key))
      cmd.replace(pos, key.size(), value);
  };
  replace_all("{lp}", lp.string());
  replace_all("{sol}", sol.string());
  if (std::system(cmd.c_str()) != 0) return std::nullopt;
  if (!std::filesystem::exists(sol)) return std::nullopt;
  return parse_solution_file(sol);
}

std::optional<EvaluatedSolution> ExternalSolverBackend::lexicographic(LexDirection direction) {
  const bool cost_first = direction == LexDirection::CostWelfare;
  const auto phase1 = workdir_ / ("lex_" + std::to_string(counter_++) + "_phase1.lp");
  LpEmitOptions opts;
  opts.objective = cost_first ? LpObjective::Cost : LpObjective::Welfare;
  emit_model(model_, phase1, opts);
  auto values1 = run_solver(phase1);
  if (!values1) return std::nullopt;
  const double primary_opt = objective_value(
      cost_first ? model_.cost_objective : model_.welfare_objective, model_.vars, *values1);

  const auto phase2 = workdir_ / ("lex_" + std::to_string(counter_++) + "_phase2.lp");
  LpEmitOptions opts2;
  opts2.objective = cost_first ? LpObjective::Welfare : LpObjective::Cost;
  if (cost_first)
    opts2.pin_cost = primary_opt;
  else
    opts2.pin_welfare = primary_opt;
  emit_model(model_, phase2, opts2);
  auto values2 = run_solver(phase2);
  if (!values2) return std::nullopt;
  return EvaluatedSolution(decode_assignment(model_, *values2), instance_, weights_);
}

std::optional<EvaluatedSolution> ExternalSolverBackend::constrained(std::int64_t welfare_cap) {
  const auto phase1 = workdir_ / ("cap_" + std::to_string(counter_++) + "_phase1.lp");
  LpEmitOptions opts;
  opts.objective = LpObjective::Cost;
  opts.welfare_cap = static_cast<double>(welfare_cap);
  emit_model(model_, phase1, opts);
  auto values1 = run_solver(phase1);
  if (!values1) return std::nullopt;
  const double cost_opt = objective_value(model_.cost_objective, model_.vars, *values1);

  const auto phase2 = workdir_ / ("cap_" + std::to_string(counter_++) + "_phase2.lp");
  LpEmitOptions opts2;
  opts2.objective = LpObjective::Welfare;
  opts2.welfare_cap = static_cast<double>(welfare_cap);
  opts2.pin_cost = cost_opt;
  emit_model(model_, phase2, opts2);
  auto values2 = run_solver(phase2);
  if (!values2) return std::nullopt;
  return EvaluatedSolution(decode_assignment(model_, *values2), instance_, weights_);
}

}  // namespace hcsp

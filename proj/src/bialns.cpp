#include "hcsp/bialns.hpp"

#include <chrono>
#include <stdexcept>

#include "hcsp/moves.hpp"
#include "hcsp/scheduler.hpp"

namespace hcsp {

BialnsConfig BialnsConfig::preset(std::string_view name) {
  BialnsConfig c;
  if (name == "default" || name.empty()) return c;
  if (name == "solomon-10") {
    c.route_iterations = 6000;
    return c;
  }
  if (name == "solomon-15") {
    c.route_iterations = 8000;
    c.schedule_iterations = 300000;
    return c;
  }
  if (name == "real-week") {
    c.init_proportion = DestroyProportion{true, 1.0};
    c.init_time_limit_sec = 90.0 * 60.0;
    c.route_iterations = 10000;
    c.inner_iterations = 1;
    c.inner_proportion = DestroyProportion{false, 1.0};
    c.schedule_iterations = 300000;
    return c;
  }
  if (name == "smoke") {  // fast configuration for tests and sanity runs
    c.init_iterations = 120;
    c.route_iterations = 40;
    c.inner_iterations = 3;
    c.inner_proportion = DestroyProportion{true, 10.0};
    c.schedule_iterations = 2000;
    return c;
  }
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

Json BialnsConfig::to_json() const {
  Json j;
  j["init_iterations"] = init_iterations;
  j["init_proportion"] = init_proportion.to_string();
  if (init_time_limit_sec) j["init_time_limit_sec"] = *init_time_limit_sec;
  j["route_iterations"] = route_iterations;
  j["inner_iterations"] = inner_iterations;
  j["inner_proportion"] = inner_proportion.to_string();
  j["schedule_iterations"] = schedule_iterations;
  j["cooling"] = cooling;
  j["seed"] = seed;
  return j;
}

EvaluatedSolution initial_solution(const Instance& instance, const ObjectiveWeights& weights,
                                   LexDirection direction, Rng& rng) {
  // Fail early on services that fit nowhere even in isolation.
  for (const Service& s : instance.services) {
    bool fits = false;
    for (int cg = 1; cg <= instance.num_caregivers() && !fits; ++cg) {
      if (!instance.caregiver(cg).serves(s.id)) continue;
      fits = make_scheduled_route({s.id}, instance, cg, s.day, priority_for(direction))
                 .has_value();
    }
    if (!fits)
      throw std::runtime_error("instance infeasible: no caregiver-day placement for service " +
                               std::to_string(s.id));
  }

  constexpr int kAttempts = 20;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    DestroyResult seed{EvaluatedSolution(Solution::empty_solution(instance), instance, weights),
                       {},
                       {}};
    for (const Service& s : instance.services) {
      seed.removed.push_back(s.id);
      seed.previous_caregiver.push_back(0);
    }
    auto built = repair(seed, InsertionOp::RandomGreedy, direction, rng);
    if (built) return std::move(*built);
  }
  throw std::runtime_error(
      "initial_solution: random greedy insertion failed repeatedly; instance appears "
      "over-constrained");
}

namespace {

const EvaluatedSolution& choose_random_solution(const RouteSet& pool,
                                                const ParetoArchive<EvaluatedSolution>& front,
                                                Rng& rng) {
  const int total = static_cast<int>(pool.size() + front.size());
  const int idx = rng.uniform_int(0, total - 1);
  if (idx < static_cast<int>(pool.size())) return pool.members()[static_cast<std::size_t>(idx)];
  return front.entries()[static_cast<std::size_t>(idx - static_cast<int>(pool.size()))].payload;
}

}  // namespace

BialnsResult bialns(const Instance& instance, const BialnsConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto ms_since = [&](Clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from).count();
  };

  BialnsResult result;
  Rng rng(config.seed);
  const ObjectiveWeights weights = ObjectiveWeights::for_instance(instance);

  // Step 1: one polished solution per lexicographic direction.
  AlnsParams init_params;
  init_params.iterations = config.init_iterations;
  init_params.proportion = config.init_proportion;
  init_params.cooling = config.cooling;

  const auto run_direction = [&](LexDirection dir) {
    EvaluatedSolution start = initial_solution(instance, weights, dir, rng);
    AlnsParams params = init_params;
    if (config.init_time_limit_sec)  // half of the step-1 budget per direction
      params.deadline = Clock::now() + std::chrono::milliseconds(static_cast<long long>(
                                           *config.init_time_limit_sec * 500.0));
    return alns_run(dir, std::move(start), result.pool, params, rng);
  };

  AlnsResult wc = run_direction(LexDirection::WelfareCost);
  AlnsResult cw = run_direction(LexDirection::CostWelfare);
  result.front.update(wc.best.objectives(), wc.best, "step1");
  result.front.update(cw.best.objectives(), cw.best, "step1");
  result.log.push_back(Json{{"step", 1},
                            {"archive_size", result.front.size()},
                            {"route_pool_size", result.pool.size()},
                            {"elapsed_ms", ms_since(t0)}});

  // Step 2: diversify route structures.
  const auto t2 = Clock::now();
  AlnsParams inner_params;
  inner_params.iterations = config.inner_iterations;
  inner_params.proportion = config.inner_proportion;
  inner_params.cooling = config.cooling;
  for (int iter = 0; iter < config.route_iterations; ++iter) {
    EvaluatedSolution pick = choose_random_solution(result.pool, result.front, rng);
    AlnsResult a = alns_run(LexDirection::WelfareCost, pick, result.pool, inner_params, rng);
    AlnsResult b = alns_run(LexDirection::CostWelfare, std::move(pick), result.pool,
                            inner_params, rng);
    result.front.update(a.best.objectives(), a.best, "step2");
    result.front.update(b.best.objectives(), b.best, "step2");
  }
  result.log.push_back(Json{{"step", 2},
                            {"archive_size", result.front.size()},
                            {"route_pool_size", result.pool.size()},
                            {"elapsed_ms", ms_since(t2)}});

  // Step 3: densify the front with schedule shifts. The pick is copied:
  // archive updates can evict the entry it came from.
  const auto t3 = Clock::now();
  for (long long iter = 0; iter < config.schedule_iterations; ++iter) {
    const EvaluatedSolution pick = choose_random_solution(result.pool, result.front, rng);
    for (EvaluatedSolution& cand : improve_welfare_move(pick, rng)) {
      const ObjectivePair obj = cand.objectives();
      result.front.update(obj, std::move(cand), "step3");
    }
    for (EvaluatedSolution& cand : improve_cost_move(pick, rng)) {
      const ObjectivePair obj = cand.objectives();
      result.front.update(obj, std::move(cand), "step3");
    }
  }
  result.log.push_back(Json{{"step", 3},
                            {"archive_size", result.front.size()},
                            {"route_pool_size", result.pool.size()},
                            {"elapsed_ms", ms_since(t3)}});
  result.log.push_back(Json{{"step", "total"},
                            {"archive_size", result.front.size()},
                            {"route_pool_size", result.pool.size()},
                            {"elapsed_ms", ms_since(t0)}});
  return result;
}

}  // namespace hcsp

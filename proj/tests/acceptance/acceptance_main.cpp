// Acceptance suite: runs every acceptance criterion of the project at its
// stated tolerance and prints one PASS/FAIL line per criterion. Exit code is
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../fixtures.hpp"
#include "../oracle_schedule.hpp"
#include "hcsp/archive.hpp"
#include "hcsp/bialns.hpp"
#include "hcsp/exact.hpp"
#include "hcsp/generator.hpp"
#include "hcsp/indicators.hpp"
#include "hcsp/moves.hpp"
#include "hcsp/scheduler.hpp"

using namespace hcsp;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {
    start_ = std::chrono::steady_clock::now();
  }

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      ok_ = false;
      if (!detail.empty()) details_.push_back(detail);
    }
  }

  template <typename T>
  void expect_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      ok_ = false;
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      details_.push_back(os.str());
    }
  }

  ~Criterion() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    std::cout << "criterion " << (number_ < 10 ? "0" : "") << number_ << " "
              << (ok_ ? "PASS" : "FAIL") << " [" << ms << " ms] " << title_ << "\n";
    for (const std::string& d : details_) std::cout << "    - " << d << "\n";
    std::cout.flush();
    if (!ok_) ++g_failures;
  }

 private:
  int number_;
  std::string title_;
  bool ok_ = true;
  std::vector<std::string> details_;
  std::chrono::steady_clock::time_point start_;
};

std::ostream& operator<<(std::ostream& os, const ObjectivePair& p) {
  return os << "(" << p.cost << ", " << p.welfare << ")";
}

std::string pairs_to_string(const std::vector<ObjectivePair>& pairs) {
  std::ostringstream os;
  for (const auto& p : pairs) os << p << " ";
  return os.str();
}

// --------------------------------------------------------------------------

void criterion_1_break_rule() {
  Criterion c(1, "unpaid-break rule: 172-minute gap deducted, 119-minute gap paid");

  Instance long_gap = fixtures::single_caregiver_instance(
      {{1, 1, 100, 1, {0, 400}, {0, 400}}, {2, 2, 353, 1, {0, 800}, {0, 800}}},
      {{0, 10}, {10, 0}}, {0, 1000}, 1000, 1000);
  const DayMetrics m1 = compute_day_metrics(Route{1, 1, {1, 2}, {0, 282}}, long_gap);
  c.expect_eq(m1.span, 635, "day span");
  c.expect_eq(m1.brk.largest, 172, "largest gap");
  c.expect_eq(m1.brk.deducted, 172, "deducted break");
  c.expect_eq(m1.paid, 463, "paid time (7h43)");

  Instance short_gap = fixtures::single_caregiver_instance(
      {{1, 1, 100, 1, {0, 400}, {0, 400}}, {2, 2, 271, 1, {0, 800}, {0, 800}}},
      {{0, 10}, {10, 0}}, {0, 1000}, 1000, 1000);
  const DayMetrics m2 = compute_day_metrics(Route{1, 1, {1, 2}, {0, 229}}, short_gap);
  c.expect_eq(m2.span, 500, "day span");
  c.expect_eq(m2.brk.largest, 119, "largest gap");
  c.expect_eq(m2.brk.deducted, 0, "deducted break");
  c.expect_eq(m2.paid, 500, "paid time equals span");
}

void criterion_2_welfare_move() {
  Criterion c(2, "welfare move on the reference six-service route");
  const auto f = fixtures::welfare_shift_fixture();
  const EvaluatedSolution base(fixtures::as_solution(f), f.instance,
                               ObjectiveWeights::for_instance(f.instance));
  c.expect_eq(base.objectives(), ObjectivePair{570, 30}, "original objectives");

  const ScheduleBounds b =
      compute_bounds(f.route.services, f.instance, f.instance.caregiver(1), 1);
  c.expect(b.feasible, "bounds feasible");
  c.expect(b.earliest == std::vector<int>{0, 120, 180, 240, 450, 540}, "earliest starts");
  c.expect(b.latest == std::vector<int>{180, 270, 450, 600, 720, 780}, "latest starts");

  const auto opt = welfare_move_options(f.route, f.instance, 3);
  c.expect_eq(opt.max_delay, 150, "max delay");
  c.expect_eq(opt.max_advance, 150, "max advance");
  c.expect(opt.delay_breakpoints == std::vector<int>{120, 150},
           "delay breakpoints {120, 150}");
  c.expect_eq(opt.best_delay, 120, "best non-increasing delay");

  const auto delayed = apply_route_shift(base, 1, 1, 3, 90);
  c.expect(delayed.has_value(), "90-minute delay feasible");
  if (delayed) {
    c.expect_eq(delayed->objectives(), ObjectivePair{420, 30}, "delayed objectives");
    c.expect(dominates(delayed->objectives(), base.objectives()),
             "delayed schedule dominates the original");
    c.expect(check_feasibility(delayed->solution(), f.instance).empty(), "delayed feasible");
  }
  const auto advanced = apply_route_shift(base, 1, 1, 3, -90);
  c.expect(advanced.has_value(), "90-minute advance feasible");
  if (advanced) {
    c.expect_eq(advanced->objectives(), ObjectivePair{450, 120}, "advanced objectives");
    c.expect(check_feasibility(advanced->solution(), f.instance).empty(), "advanced feasible");
  }
}

void criterion_3_cost_move() {
  Criterion c(3, "cost move options on the second reference route");
  const auto f = fixtures::cost_shift_fixture();
  const EvaluatedSolution base(fixtures::as_solution(f), f.instance,
                               ObjectiveWeights::for_instance(f.instance));

  const auto analysis = cost_move_options(f.route, f.instance, 3);
  c.expect_eq(analysis.max_delay, 210, "max delay");
  c.expect_eq(analysis.max_advance, 150, "max advance");
  c.expect_eq(analysis.options.size(), std::size_t{4}, "four options");

  const int shifts[] = {60, 180, -30, -120};
  const ObjectivePair expected[] = {{570, 30}, {450, 150}, {570, 30}, {390, 180}};
  ParetoArchive<int> archive;
  archive.update({450, 30}, 0);
  archive.update({420, 120}, 0);
  for (int i = 0; i < 4; ++i) {
    const auto cand = apply_route_shift(base, 1, 1, 3, shifts[i]);
    c.expect(cand.has_value(), "option " + std::to_string(i + 1) + " feasible");
    if (!cand) continue;
    std::ostringstream what;
    what << "option " << i + 1 << " objectives at shift " << std::abs(shifts[i]);
    c.expect_eq(cand->objectives(), expected[i], what.str());
    archive.update(cand->objectives(), 0);
  }
  c.expect_eq(pairs_to_string(archive.front()),
              pairs_to_string({{390, 180}, {420, 120}, {450, 30}}),
              "archive after the four updates");
}

std::vector<Instance> oracle_suite() {
  std::vector<Instance> suite;
  GeneratorProfile profile = GeneratorProfile::by_name("tiny");
  for (std::uint64_t k = 0; k < 20; ++k) {
    const int services = 3 + static_cast<int>(k % 3);  // 3..5
    const int caregivers = 1 + static_cast<int>(k % 2);
    suite.push_back(generate_instance(services, caregivers, 7100 + k, profile));
  }
  return suite;
}

void criterion_4_oracle_equivalence(const std::vector<Instance>& suite,
                                    std::vector<ParetoArchive<EvaluatedSolution>>& oracles) {
  Criterion c(4, "full-resolution epsilon sweep equals the exhaustive front (20 instances)");
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const Instance& inst = suite[k];
    oracles.push_back(brute_force_front(inst, 15));
    const auto& oracle = oracles.back();
    c.expect(!oracle.empty(), "instance " + std::to_string(k) + ": oracle front non-empty");

    EnumerationBackend backend(inst, 15);
    const auto cw = backend.lexicographic(LexDirection::CostWelfare);
    const auto wc = backend.lexicographic(LexDirection::WelfareCost);
    if (!cw || !wc) {
      c.expect(false, "instance " + std::to_string(k) + ": lexicographic solve failed");
      continue;
    }
    const int g2 = static_cast<int>(
        std::max<std::int64_t>(1, cw->objectives().welfare - wc->objectives().welfare));
    const auto swept = augmecon2(backend, g2, 1e-4);
    if (!(swept.front() == oracle.front())) {
      c.expect(false, "instance " + std::to_string(k) + ": swept " +
                          pairs_to_string(swept.front()) + "vs oracle " +
                          pairs_to_string(oracle.front()));
    }
  }
}

void criterion_5_metaheuristic_quality(const std::vector<Instance>& suite,
                                       const std::vector<ParetoArchive<EvaluatedSolution>>& oracles) {
  Criterion c(5, "metaheuristic quality: mean CV <= 0.10 and mean normalized EPS <= 0.02");
  double cv_sum = 0.0, eps_sum = 0.0;
  int runs = 0;

  BialnsConfig config;
  config.init_iterations = 120;
  config.route_iterations = 120;
  config.inner_iterations = 5;
  config.inner_proportion = DestroyProportion{true, 25.0};
  config.schedule_iterations = 15000;

  for (std::size_t k = 0; k < suite.size(); ++k) {
    std::vector<Point2> oracle_points;
    for (const auto& p : oracles[k].front()) oracle_points.push_back(to_point(p));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      config.seed = seed;
      const BialnsResult res = bialns(suite[k], config);
      std::vector<Point2> algorithm_points;
      for (const auto& p : res.front.front()) algorithm_points.push_back(to_point(p));

      cv_sum += coverage(oracle_points, algorithm_points);

      // min-max normalization over the union of the two fronts
      NormalizedFronts ctx = normalize_fronts({oracle_points, algorithm_points});
      eps_sum += additive_epsilon(ctx.fronts[0], ctx.fronts[1]);
      ++runs;
    }
  }
  const double mean_cv = cv_sum / runs;
  const double mean_eps = eps_sum / runs;
  std::ostringstream detail;
  detail << "mean CV = " << mean_cv << ", mean EPS = " << mean_eps << " over " << runs
         << " runs";
  c.expect(mean_cv <= 0.10, "mean CV exceeds 0.10: " + detail.str());
  c.expect(mean_eps <= 0.02, "mean normalized EPS exceeds 0.02: " + detail.str());
  std::cout << "    (" << detail.str() << ")\n";
}

void criterion_6_feasibility_sweep() {
  Criterion c(6, "feasibility sweep: 100 instances x 5 seeds, all archive members feasible");
  BialnsConfig config = BialnsConfig::preset("smoke");
  config.init_iterations = 60;
  config.route_iterations = 20;
  config.inner_iterations = 2;
  config.schedule_iterations = 400;

  int archives_checked = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Instance inst =
        generate_instance(6 + static_cast<int>(k % 3), 2 + static_cast<int>(k % 2), 52000 + k);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      config.seed = seed;
      const BialnsResult res = bialns(inst, config);
      ++archives_checked;
      for (const auto& e : res.front.entries()) {
        const auto violations = check_feasibility(e.payload.solution(), inst);
        if (!violations.empty()) {
          c.expect(false, "instance " + std::to_string(k) + " seed " + std::to_string(seed) +
                              ": " + violations.front().message);
          return;
        }
      }
    }
  }
  c.expect(archives_checked == 500, "expected 500 runs");
}

void criterion_7_indicators() {
  Criterion c(7, "indicator correctness on hand-computed three-point fronts");
  const double tol = 1e-9;
  const std::vector<Point2> rf{{0, 10}, {5, 5}, {10, 0}};

  const auto close = [&](double got, double want) { return std::abs(got - want) <= tol; };

  c.expect(close(coverage(rf, rf), 0.0), "CV identity");
  c.expect(close(generational_distance(rf, rf), 0.0), "GD identity");
  c.expect(close(inverted_generational_distance(rf, rf), 0.0), "IGD identity");
  c.expect(close(additive_epsilon(rf, rf), 0.0), "EPS identity");

  const std::vector<Point2> a2{{1, 10}, {6, 5}, {10, 1}};
  c.expect(close(coverage(rf, a2), 1.0), "CV shifted front");
  c.expect(close(generational_distance(rf, a2), std::sqrt(3.0) / 3.0), "GD shifted front");
  c.expect(close(inverted_generational_distance(rf, a2), std::sqrt(3.0) / 3.0),
           "IGD shifted front");
  c.expect(close(additive_epsilon(rf, a2), 1.0), "EPS shifted front");

  const std::vector<Point2> a3{{0, 10}, {6, 6}, {9, 3}};
  c.expect(close(coverage(rf, a3), 1.0 / 3.0), "CV one-dominated front");
  c.expect(close(generational_distance(rf, a3), std::sqrt(12.0) / 3.0), "GD one-dominated");
  c.expect(close(inverted_generational_distance(rf, a3), std::sqrt(12.0) / 3.0),
           "IGD one-dominated");
  c.expect(close(additive_epsilon(rf, a3), 3.0), "EPS one-dominated");
}

void criterion_8_determinism() {
  Criterion c(8, "CLI determinism: solve --seed 42 twice gives identical front bytes");
  const fs::path work = fs::temp_directory_path() / "hcsp_acceptance_cli";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::string cli = HCSP_CLI_PATH;
  const auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " >/dev/null 2>&1").c_str()) == 0;
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
  };

  c.expect(run("generate --services 6 --caregivers 2 --seed 5 --profile tiny --out " +
               (work / "inst").string()),
           "generate run");
  fs::path instance;
  for (const auto& e : fs::directory_iterator(work / "inst"))
    if (e.path().filename() != "manifest.json") instance = e.path();
  c.expect(!instance.empty(), "instance file present");

  c.expect(run("solve " + instance.string() + " --preset smoke --seed 42 --out " +
               (work / "a").string()),
           "first solve");
  c.expect(run("solve " + instance.string() + " --preset smoke --seed 42 --out " +
               (work / "b").string()),
           "second solve");
  const std::string fa = slurp(work / "a" / "front.csv");
  const std::string fb = slurp(work / "b" / "front.csv");
  c.expect(!fa.empty(), "front non-empty");
  c.expect(fa == fb, "front bytes identical");
}

void criterion_9_archive_laws() {
  Criterion c(9, "archive laws over 1000 random point streams");
  Rng rng(456123);
  for (int stream = 0; stream < 1000; ++stream) {
    const int n = rng.uniform_int(1, 60);
    std::vector<ObjectivePair> points;
    for (int i = 0; i < n; ++i)
      points.push_back({rng.uniform_int(0, 25), rng.uniform_int(0, 25)});

    ParetoArchive<int> reference;
    for (const auto& p : points) reference.update(p, 0);
    const auto expected = reference.front();

    // dominance consistency and strict monotone shape
    for (std::size_t i = 1; i < expected.size(); ++i) {
      if (!(expected[i - 1].cost < expected[i].cost &&
            expected[i - 1].welfare > expected[i].welfare)) {
        c.expect(false, "front not strictly monotone in stream " + std::to_string(stream));
        return;
      }
    }
    for (const auto& a : expected)
      for (const auto& b : expected)
        if (dominates(a, b)) {
          c.expect(false, "dominated pair kept in stream " + std::to_string(stream));
          return;
        }

    // order independence
    rng.shuffle(points);
    ParetoArchive<int> shuffled;
    for (const auto& p : points) shuffled.update(p, 0);
    if (!(shuffled.front() == expected)) {
      c.expect(false, "front depends on insertion order in stream " + std::to_string(stream));
      return;
    }
  }
}

void criterion_10_scheduler_optimality() {
  Criterion c(10, "fixed-order schedules match one-minute-grid minima on 200 routes");
  Rng rng(20240101);
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform_int(1, 5);
    // windows kept narrow enough for the exhaustive oracle
    std::vector<Service> services;
    std::vector<std::vector<int>> travel(n, std::vector<int>(n, 0));
    int cursor = rng.uniform_int(300, 480);
    for (int j = 1; j <= n; ++j) {
      Service s;
      s.id = j;
      s.user_id = j;
      s.duration = rng.uniform_int(15, 60);
      s.day = 1;
      const int width = s.duration + rng.uniform_int(10, 150);
      const int start = std::max(0, cursor + rng.uniform_int(-60, 60));
      s.hard = {start, std::min(kMinutesPerDay - 1, start + width)};
      const int soft_lo = s.hard.start + rng.uniform_int(0, std::max(0, s.hard.width() - s.duration));
      const int soft_hi = soft_lo + s.duration +
                          rng.uniform_int(0, std::max(0, s.hard.end - soft_lo - s.duration));
      s.soft = {soft_lo, std::min(soft_hi, s.hard.end)};
      services.push_back(s);
      cursor += rng.uniform_int(20, 120);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) travel[a][b] = 5 * std::abs(a - b) + 5;
    const Instance inst = fixtures::single_caregiver_instance(
        std::move(services), std::move(travel), {0, kMinutesPerDay - 1}, kMinutesPerDay,
        7 * kMinutesPerDay);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j + 1;
    const Caregiver& cg = inst.caregiver(1);

    const auto pen_min = oracle::min_penalty_1min(order, inst, cg, 1);
    const auto cost_min = oracle::min_cost_1min(order, inst, cg, 1);
    const auto wf = schedule_welfare_first(order, inst, cg, 1);
    const auto cf = schedule_cost_first(order, inst, cg, 1);
    if (cost_min >= oracle::kUnreachable) {
      c.expect(!wf.has_value() && !cf.has_value(), "infeasible order must be refused");
      continue;
    }
    ++checked;
    if (!wf || !cf) {
      c.expect(false, "scheduler refused a feasible order in round " + std::to_string(round));
      return;
    }
    const DayMetrics mw = compute_day_metrics(Route{1, 1, order, *wf}, inst);
    const DayMetrics mc = compute_day_metrics(Route{1, 1, order, *cf}, inst);
    if (mw.penalty != pen_min) {
      c.expect(false, "welfare-first penalization " + std::to_string(mw.penalty) + " != " +
                          std::to_string(pen_min) + " in round " + std::to_string(round));
      return;
    }
    if (static_cast<std::int64_t>(mc.paid) != cost_min) {
      c.expect(false, "cost-first paid " + std::to_string(mc.paid) + " != " +
                          std::to_string(cost_min) + " in round " + std::to_string(round));
      return;
    }
  }
  c.expect(checked >= 150, "expected at least 150 schedulable routes, got " +
                               std::to_string(checked));
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  criterion_1_break_rule();
  criterion_2_welfare_move();
  criterion_3_cost_move();

  const std::vector<Instance> suite = oracle_suite();
  std::vector<ParetoArchive<EvaluatedSolution>> oracles;
  criterion_4_oracle_equivalence(suite, oracles);
  criterion_5_metaheuristic_quality(suite, oracles);

  criterion_6_feasibility_sweep();
  criterion_7_indicators();
  criterion_8_determinism();
  criterion_9_archive_laws();
  criterion_10_scheduler_optimality();

  std::cout << (g_failures == 0 ? "all criteria passed\n"
                                : std::to_string(g_failures) + " criteria failed\n");
  return g_failures;
}

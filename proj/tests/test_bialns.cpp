#include <doctest.h>

#include "hcsp/bialns.hpp"
#include "hcsp/exact.hpp"
#include "hcsp/generator.hpp"

using namespace hcsp;

TEST_SUITE_BEGIN("bialns");

TEST_CASE("a single service with one caregiver yields the unique assignment") {
  const Instance inst = generate_instance(1, 1, 7);
  Rng rng(1);
  const auto sol =
      initial_solution(inst, ObjectiveWeights::for_instance(inst), LexDirection::CostWelfare, rng);
  int assigned = 0;
  for (const Route& r : sol.solution().routes) assigned += r.size();
  CHECK(assigned == 1);

  BialnsConfig config = BialnsConfig::preset("smoke");
  config.seed = 3;
  const BialnsResult res = bialns(inst, config);
  CHECK(res.front.size() == 1);
}

TEST_CASE("a service nobody can serve is reported by name") {
  Instance inst = generate_instance(3, 2, 8);
  for (Caregiver& cg : inst.caregivers) {
    cg.can_serve[1] = 0;
    cg.affinity[1] = 0;
  }
  Rng rng(1);
  CHECK_THROWS_WITH_AS(
      initial_solution(inst, ObjectiveWeights::for_instance(inst), LexDirection::WelfareCost, rng),
      doctest::Contains("service 2"), std::runtime_error);
}

TEST_CASE("welfare-led starts have no worse penalization than cost-led starts, mostly") {
  int welfare_better_or_equal = 0;
  int total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = generate_instance(8, 3, 9000 + seed);
    const ObjectiveWeights w = ObjectiveWeights::for_instance(inst);
    Rng rng(seed);
    try {
      const auto wc = initial_solution(inst, w, LexDirection::WelfareCost, rng);
      const auto cw = initial_solution(inst, w, LexDirection::CostWelfare, rng);
      ++total;
      if (wc.objectives().welfare <= cw.objectives().welfare) ++welfare_better_or_equal;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  REQUIRE(total >= 90);
  CHECK(welfare_better_or_equal * 10 >= total * 8);  // at least 80%
}

TEST_CASE("archive members are feasible and mutually non-dominated") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Instance inst = generate_instance(7, 2, 40 + seed);
    BialnsConfig config = BialnsConfig::preset("smoke");
    config.seed = seed;
    const BialnsResult res = bialns(inst, config);
    REQUIRE(res.front.size() >= 1);
    const auto& entries = res.front.entries();
    for (const auto& e : entries) {
      CHECK(check_feasibility(e.payload.solution(), inst).empty());
      CHECK(e.payload.objectives() == e.objectives);
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = 0; j < entries.size(); ++j)
        if (i != j) CHECK(!dominates(entries[i].objectives, entries[j].objectives));
  }
}

TEST_CASE("the front is at least as dense as the coarse exact front") {
  // On grid-aligned instances the search works at one-minute resolution, so
  // its non-dominated set should match or exceed the 15-minute exact front.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Instance inst =
        generate_instance(5, 2, 70 + seed, GeneratorProfile::by_name("tiny"));
    BialnsConfig config;
    config.init_iterations = 100;
    config.route_iterations = 100;
    config.inner_iterations = 5;
    config.inner_proportion = DestroyProportion{true, 25.0};
    config.schedule_iterations = 10000;
    config.seed = seed + 1;
    const BialnsResult res = bialns(inst, config);

    EnumerationBackend backend(inst, 15);
    const std::size_t exact_size = backend.pareto_solutions().size();
    CHECK(res.front.size() * 2 >= exact_size);
  }
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const Instance inst = generate_instance(6, 2, 55);
  BialnsConfig config = BialnsConfig::preset("smoke");
  config.seed = 77;
  const BialnsResult a = bialns(inst, config);
  const BialnsResult b = bialns(inst, config);
  CHECK(a.front.front() == b.front.front());
  CHECK(a.pool.size() == b.pool.size());
}

TEST_CASE("presets carry the documented parameters") {
  const BialnsConfig d = BialnsConfig::preset("default");
  CHECK(d.init_iterations == 1000);
  CHECK(d.init_proportion.automatic);
  CHECK(d.init_proportion.percent == doctest::Approx(100.0));
  CHECK(d.route_iterations == 5000);
  CHECK(d.inner_iterations == 5);
  CHECK(d.inner_proportion.automatic);
  CHECK(d.inner_proportion.percent == doctest::Approx(5.0));
  CHECK(d.schedule_iterations == 200000);

  const BialnsConfig s10 = BialnsConfig::preset("solomon-10");
  CHECK(s10.route_iterations == 6000);
  const BialnsConfig s15 = BialnsConfig::preset("solomon-15");
  CHECK(s15.route_iterations == 8000);
  CHECK(s15.schedule_iterations == 300000);

  const BialnsConfig rw = BialnsConfig::preset("real-week");
  CHECK(rw.route_iterations == 10000);
  CHECK(rw.inner_iterations == 1);
  CHECK(!rw.inner_proportion.automatic);
  CHECK(rw.inner_proportion.percent == doctest::Approx(1.0));
  CHECK(rw.schedule_iterations == 300000);
  REQUIRE(rw.init_time_limit_sec.has_value());
  CHECK(*rw.init_time_limit_sec == doctest::Approx(5400.0));
  CHECK(rw.init_proportion.automatic);
  CHECK(rw.init_proportion.percent == doctest::Approx(1.0));

  CHECK_THROWS_AS(BialnsConfig::preset("nope"), std::invalid_argument);
}

TEST_CASE("the run log reports all three steps") {
  const Instance inst = generate_instance(5, 2, 66);
  BialnsConfig config = BialnsConfig::preset("smoke");
  const BialnsResult res = bialns(inst, config);
  REQUIRE(res.log.size() == 4);
  CHECK(res.log[0]["step"] == 1);
  CHECK(res.log[1]["step"] == 2);
  CHECK(res.log[2]["step"] == 3);
  CHECK(res.log[3]["step"] == "total");
  for (const Json& line : res.log) {
    CHECK(line.contains("archive_size"));
    CHECK(line.contains("route_pool_size"));
    CHECK(line.contains("elapsed_ms"));
  }
}

TEST_SUITE_END();

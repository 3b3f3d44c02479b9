#include <doctest.h>

#include <cmath>

#include "hcsp/indicators.hpp"
#include "hcsp/rng.hpp"

using namespace hcsp;

namespace {
constexpr double kTol = 1e-9;
}

TEST_SUITE_BEGIN("indicators");

TEST_CASE("coverage basics") {
  CHECK(coverage({{0, 0}}, {{1, 1}}) == doctest::Approx(1.0).epsilon(kTol));
  const std::vector<Point2> f{{0, 10}, {5, 5}, {10, 0}};
  CHECK(coverage(f, f) == doctest::Approx(0.0).epsilon(kTol));
  CHECK_THROWS_AS(coverage(f, {}), std::invalid_argument);
}

TEST_CASE("distance indicator basics") {
  const std::vector<Point2> f{{0, 10}, {5, 5}, {10, 0}};
  CHECK(generational_distance(f, f) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(inverted_generational_distance(f, f) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(generational_distance({{0, 0}}, {{3, 4}}) == doctest::Approx(5.0).epsilon(kTol));
  // singleton symmetry
  CHECK(generational_distance({{0, 0}}, {{3, 4}}) ==
        doctest::Approx(inverted_generational_distance({{3, 4}}, {{0, 0}})).epsilon(kTol));
}

TEST_CASE("additive epsilon basics") {
  const std::vector<Point2> f{{0, 10}, {5, 5}, {10, 0}};
  CHECK(additive_epsilon(f, f) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(additive_epsilon({{0, 0}}, {{1, 1}}) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(additive_epsilon({{0, 0}}, {{0, 2}, {2, 0}}) == doctest::Approx(2.0).epsilon(kTol));
}

TEST_CASE("three-point hand-computed fronts") {
  const std::vector<Point2> rf{{0, 10}, {5, 5}, {10, 0}};

  SUBCASE("uniformly shifted front") {
    const std::vector<Point2> a{{1, 10}, {6, 5}, {10, 1}};
    CHECK(coverage(rf, a) == doctest::Approx(1.0).epsilon(kTol));
    CHECK(generational_distance(rf, a) ==
          doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(kTol));
    CHECK(inverted_generational_distance(rf, a) ==
          doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(kTol));
    CHECK(additive_epsilon(rf, a) == doctest::Approx(1.0).epsilon(kTol));
  }

  SUBCASE("one dominated member") {
    const std::vector<Point2> a{{0, 10}, {6, 6}, {9, 3}};
    CHECK(coverage(rf, a) == doctest::Approx(1.0 / 3.0).epsilon(kTol));
    CHECK(generational_distance(rf, a) ==
          doctest::Approx(std::sqrt(12.0) / 3.0).epsilon(kTol));
    CHECK(inverted_generational_distance(rf, a) ==
          doctest::Approx(std::sqrt(12.0) / 3.0).epsilon(kTol));
    CHECK(additive_epsilon(rf, a) == doctest::Approx(3.0).epsilon(kTol));
  }
}

TEST_CASE("normalization context") {
  SUBCASE("a single front is its own non-dominated reference") {
    const std::vector<Point2> f{{0, 10}, {5, 5}, {5, 6}};  // (5,6) dominated
    const NormalizedFronts ctx = normalize_fronts({f});
    CHECK(ctx.reference_raw == std::vector<Point2>{{0, 10}, {5, 5}});
  }

  SUBCASE("identical fronts give all-zero indicators") {
    const std::vector<Point2> f{{0, 10}, {5, 5}, {10, 0}};
    const NormalizedFronts ctx = normalize_fronts({f, f});
    for (std::size_t i = 0; i < 2; ++i) {
      const FrontReport r = report_front(ctx, i);
      CHECK(r.cv == doctest::Approx(0.0).epsilon(kTol));
      CHECK(r.eps == doctest::Approx(0.0).epsilon(kTol));
      CHECK(r.gd == doctest::Approx(0.0).epsilon(kTol));
      CHECK(r.igd == doctest::Approx(0.0).epsilon(kTol));
    }
  }

  SUBCASE("the union reference is dominance-consistent") {
    Rng rng(808);
    for (int round = 0; round < 200; ++round) {
      std::vector<std::vector<Point2>> fronts(2);
      for (auto& f : fronts)
        for (int i = rng.uniform_int(1, 8); i > 0; --i)
          f.push_back({static_cast<double>(rng.uniform_int(0, 30)),
                       static_cast<double>(rng.uniform_int(0, 30))});
      const NormalizedFronts ctx = normalize_fronts(fronts);
      for (const Point2& a : ctx.reference_raw)
        for (const Point2& b : ctx.reference_raw) CHECK(!point_dominates(a, b));
    }
  }

  SUBCASE("degenerate dimensions map to zero") {
    const std::vector<Point2> f{{5, 1}, {5, 2}};
    const NormalizedFronts ctx = normalize_fronts({f});
    for (const auto& front : ctx.fronts)
      for (const Point2& p : front) CHECK(p[0] == doctest::Approx(0.0));
  }
}

TEST_CASE("coverage is zero whenever the approximation is a subset of the reference") {
  Rng rng(303);
  for (int round = 0; round < 100; ++round) {
    std::vector<Point2> rf;
    for (int i = rng.uniform_int(2, 10); i > 0; --i)
      rf.push_back({static_cast<double>(rng.uniform_int(0, 20)),
                    static_cast<double>(rng.uniform_int(0, 20))});
    rf = non_dominated(std::move(rf));
    std::vector<Point2> a;
    for (const Point2& p : rf)
      if (rng.chance(0.5)) a.push_back(p);
    if (a.empty()) a.push_back(rf.front());
    CHECK(coverage(rf, a) == doctest::Approx(0.0).epsilon(kTol));
  }
}

TEST_CASE("distance indicators are invariant under shared affine scaling after normalization") {
  Rng rng(404);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::vector<Point2>> fronts(2);
    for (auto& f : fronts)
      for (int i = rng.uniform_int(2, 6); i > 0; --i)
        f.push_back({static_cast<double>(rng.uniform_int(0, 50)),
                     static_cast<double>(rng.uniform_int(0, 50))});
    const double scale = 3.5;
    const double shift = 11.0;
    std::vector<std::vector<Point2>> scaled = fronts;
    for (auto& f : scaled)
      for (Point2& p : f) {
        p[0] = p[0] * scale + shift;
        p[1] = p[1] * scale + shift;
      }
    const NormalizedFronts ctx = normalize_fronts(fronts);
    const NormalizedFronts ctx2 = normalize_fronts(scaled);
    for (std::size_t i = 0; i < 2; ++i) {
      const FrontReport r1 = report_front(ctx, i);
      const FrontReport r2 = report_front(ctx2, i);
      CHECK(r1.gd == doctest::Approx(r2.gd).epsilon(1e-9));
      CHECK(r1.igd == doctest::Approx(r2.igd).epsilon(1e-9));
      CHECK(r1.eps == doctest::Approx(r2.eps).epsilon(1e-9));
      CHECK(r1.cv == doctest::Approx(r2.cv).epsilon(1e-9));
    }
  }
}

TEST_CASE("nonpositive epsilon implies zero coverage for non-dominated approximations") {
  Rng rng(505);
  int hits = 0;
  for (int round = 0; round < 400; ++round) {
    std::vector<Point2> rf, a;
    for (int i = rng.uniform_int(1, 6); i > 0; --i)
      rf.push_back({static_cast<double>(rng.uniform_int(0, 15)),
                    static_cast<double>(rng.uniform_int(0, 15))});
    for (int i = rng.uniform_int(1, 6); i > 0; --i)
      a.push_back({static_cast<double>(rng.uniform_int(0, 15)),
                   static_cast<double>(rng.uniform_int(0, 15))});
    rf = non_dominated(std::move(rf));
    a = non_dominated(std::move(a));
    if (additive_epsilon(rf, a) <= 0.0) {
      ++hits;
      CHECK(coverage(rf, a) == doctest::Approx(0.0));
    }
  }
  CHECK(hits > 0);
}

TEST_SUITE_END();

#pragma once

// Hand-built single-route instances used across the unit and acceptance
// suites. Both describe one caregiver-day with six services and a reference
// schedule whose shift behaviour is pinned by the tests:
//
//  - welfare_shift_fixture: soft windows chosen so that the welfare move on
//    service 4 has symmetric slack 150, delay breakpoints {120, 150} with a
//    non-increasing cap of 120, and known objective outcomes for 90-minute
//    shifts in both directions.
//
//  - cost_shift_fixture: gap structure (60, 30, 30, 60, 30) so that the four
//    cost-move options get the ranges [0,90], [90,210], [0,120], [60,150] and
//    known outcomes at shifts 60/180/30/120.

#include <vector>

#include "hcsp/instance.hpp"
#include "hcsp/solution.hpp"

namespace hcsp::fixtures {

struct SingleRouteFixture {
  Instance instance;
  Route route;
};

inline Instance single_caregiver_instance(std::vector<Service> services,
                                          std::vector<std::vector<int>> travel,
                                          TimeWindow availability, int daily_max,
                                          int weekly_contract) {
  Instance inst;
  inst.min_unpaid_break = 120;
  inst.services = std::move(services);
  const int n = inst.num_services();

  Caregiver cg;
  cg.id = 1;
  cg.weekly_contract = weekly_contract;
  for (int d = 0; d < kDaysPerWeek; ++d) {
    cg.availability[d] = availability;
    cg.daily_max[d] = daily_max;
  }
  cg.can_serve.assign(n, 1);
  cg.affinity.assign(n, 0);
  inst.caregivers.push_back(std::move(cg));

  inst.travel = TravelMatrix(n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) inst.travel.set(a, b, travel[a - 1][b - 1]);
  inst.meta = Json{{"fixture", true}};
  return inst;
}

// Six services on day 1; schedule (120, 210, 270, 390, 540, 630), gaps
// (0, 0, 60, 60, 30), cost 570, penalization 30 (service 2 starts 30 before
// its preferred window). Start bounds: earliest (0, 120, 180, 240, 450, 540),
// latest (180, 270, 450, 600, 720, 780).
inline SingleRouteFixture welfare_shift_fixture() {
  std::vector<Service> services = {
      {1, 1, 60, 1, {0, 420}, {120, 360}},    //
      {2, 2, 45, 1, {120, 315}, {240, 315}},  //
      {3, 3, 45, 1, {120, 495}, {270, 495}},  //
      {4, 4, 60, 1, {180, 660}, {240, 600}},  //
      {5, 5, 45, 1, {450, 765}, {480, 645}},  //
      {6, 6, 60, 1, {540, 840}, {570, 750}},  //
  };
  // consecutive travel 30, 15, 15, 30, 15; other pairs metric (path sums)
  std::vector<std::vector<int>> travel = {
      {0, 30, 45, 60, 90, 105},  //
      {30, 0, 15, 30, 60, 75},   //
      {45, 15, 0, 15, 45, 60},   //
      {60, 30, 15, 0, 30, 45},   //
      {90, 60, 45, 30, 0, 15},   //
      {105, 75, 60, 45, 15, 0},  //
  };
  SingleRouteFixture f{
      single_caregiver_instance(std::move(services), std::move(travel), {0, 840}, 840, 840),
      Route{1, 1, {1, 2, 3, 4, 5, 6}, {120, 210, 270, 390, 540, 630}}};
  return f;
}

// Six services on day 1; schedule (90, 210, 300, 390, 540, 630), gaps
// (60, 30, 30, 60, 30), cost 570, penalization 30 (service 3 starts 30 before
// its preferred window). Start bounds: earliest (0, 60, 120, 240, 330, 390),
// latest (420, 480, 540, 600, 690, 750).
inline SingleRouteFixture cost_shift_fixture() {
  std::vector<Service> services = {
      {1, 1, 45, 1, {0, 480}, {60, 300}},     //
      {2, 2, 45, 1, {60, 540}, {210, 390}},   //
      {3, 3, 45, 1, {120, 600}, {330, 420}},  //
      {4, 4, 60, 1, {240, 660}, {240, 600}},  //
      {5, 5, 45, 1, {300, 735}, {450, 645}},  //
      {6, 6, 30, 1, {360, 780}, {540, 720}},  //
  };
  // consecutive travel 15, 15, 15, 30, 15
  std::vector<std::vector<int>> travel = {
      {0, 15, 30, 45, 75, 90},  //
      {15, 0, 15, 30, 60, 75},  //
      {30, 15, 0, 15, 45, 60},  //
      {45, 30, 15, 0, 30, 45},  //
      {75, 60, 45, 30, 0, 15},  //
      {90, 75, 60, 45, 15, 0},  //
  };
  SingleRouteFixture f{
      single_caregiver_instance(std::move(services), std::move(travel), {0, 800}, 800, 800),
      Route{1, 1, {1, 2, 3, 4, 5, 6}, {90, 210, 300, 390, 540, 630}}};
  return f;
}

inline Solution as_solution(const SingleRouteFixture& f) {
  Solution s = Solution::empty_solution(f.instance);
  s.route(f.route.caregiver_id, f.route.day) = f.route;
  return s;
}

}  // namespace hcsp::fixtures

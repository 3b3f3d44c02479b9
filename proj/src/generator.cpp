#include "hcsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "hcsp/rng.hpp"

namespace hcsp {

namespace {

int snap(int value, int grid) { return (value / grid) * grid; }

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Sufficient (not necessary) solvability probe: append every service, in day
// order, to the end of some compatible caregiver's route at its earliest
// feasible start. Success certifies a feasible solution exists.
bool greedy_probe(const Instance& inst) {
  const int n_cg = inst.num_caregivers();
  // last (service, end time) per caregiver-day
  std::vector<int> last_service(static_cast<std::size_t>(n_cg) * kDaysPerWeek, 0);
  std::vector<int> last_end(static_cast<std::size_t>(n_cg) * kDaysPerWeek, 0);
  std::vector<int> first_start(static_cast<std::size_t>(n_cg) * kDaysPerWeek, -1);

  std::vector<int> order(inst.num_services());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Service& sa = inst.service(a);
    const Service& sb = inst.service(b);
    if (sa.day != sb.day) return sa.day < sb.day;
    return sa.hard.start < sb.hard.start;
  });

  for (int sid : order) {
    const Service& s = inst.service(sid);
    bool placed = false;
    for (int cg = 1; cg <= n_cg && !placed; ++cg) {
      const Caregiver& c = inst.caregiver(cg);
      if (!c.serves(sid)) continue;
      const std::size_t slot = static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (s.day - 1);
      const TimeWindow& avail = c.availability[s.day - 1];
      int earliest = std::max(s.hard.start, avail.start);
      if (last_service[slot] != 0)
        earliest = std::max(earliest, last_end[slot] + inst.travel(last_service[slot], sid));
      const int end = earliest + s.duration;
      if (earliest + s.duration > s.hard.end || end > avail.end) continue;
      const int start_of_day = first_start[slot] < 0 ? earliest : first_start[slot];
      if (end - start_of_day > c.daily_max[s.day - 1]) continue;  // ignores break relief
      last_service[slot] = sid;
      last_end[slot] = end;
      first_start[slot] = start_of_day;
      placed = true;
    }
    if (!placed) return false;
  }
  return true;
}

Instance build_attempt(int n_services, int n_caregivers, std::uint64_t seed,
                       const GeneratorProfile& p) {
  Rng rng(seed);
  Instance inst;
  inst.min_unpaid_break = 120;

  const int g = std::max(1, p.grid);
  std::vector<Point> coords(n_services);
  for (Point& pt : coords) {
    pt.x = rng.uniform01() * p.coord_range;
    pt.y = rng.uniform01() * p.coord_range;
  }

  for (int j = 1; j <= n_services; ++j) {
    Service s;
    s.id = j;
    s.user_id = j;
    s.day = rng.uniform_int(1, p.days);
    s.duration = snap(rng.uniform_int(p.min_duration, p.max_duration), g);
    s.duration = std::max(s.duration, g);

    const int width = std::max(
        s.duration, snap(rng.uniform_int(p.hard_min_width, p.hard_max_width), g));
    const int lo = snap(p.earliest_start, g);
    const int hi = snap(p.latest_end, g) - width;
    const int start = lo >= hi ? lo : snap(rng.uniform_int(lo, hi), g);
    s.hard = TimeWindow{start, start + width};

    // Soft window: uniform endpoints inside the hard window, width >= duration.
    const int ss = snap(rng.uniform_int(s.hard.start, s.hard.end - s.duration), g);
    const int se = snap(rng.uniform_int(ss + s.duration, s.hard.end), g);
    s.soft = TimeWindow{ss, std::max(se, ss + s.duration)};
    inst.services.push_back(s);
  }

  inst.travel = TravelMatrix(n_services);
  for (int a = 1; a <= n_services; ++a)
    for (int b = 1; b <= n_services; ++b) {
      if (a == b) continue;
      const double dx = coords[a - 1].x - coords[b - 1].x;
      const double dy = coords[a - 1].y - coords[b - 1].y;
      int t = static_cast<int>(std::lround(std::sqrt(dx * dx + dy * dy)));
      t = ((t + g - 1) / g) * g;  // round up onto the grid
      inst.travel.set(a, b, t);
    }

  const int total_duration =
      std::accumulate(inst.services.begin(), inst.services.end(), 0,
                      [](int acc, const Service& s) { return acc + s.duration; });

  for (int i = 1; i <= n_caregivers; ++i) {
    Caregiver c;
    c.id = i;
    for (int d = 0; d < kDaysPerWeek; ++d) {
      c.availability[d] = TimeWindow{snap(p.availability.start, g), snap(p.availability.end, g)};
      const int width = c.availability[d].width();
      c.daily_max[d] = p.daily_max_cap > 0 ? std::min(width, snap(p.daily_max_cap, g)) : width;
    }
    c.weekly_contract = std::max(
        p.max_duration,
        static_cast<int>(std::lround(p.contract_fraction * total_duration / n_caregivers)));
    c.can_serve.assign(n_services, 0);
    c.affinity.assign(n_services, 0);
    for (int j = 0; j < n_services; ++j) {
      if (rng.chance(p.compat_prob)) {
        c.can_serve[j] = 1;
        c.affinity[j] = rng.uniform_int(0, 5);
      }
    }
    inst.caregivers.push_back(std::move(c));
  }

  // Every service needs at least one compatible caregiver.
  for (int j = 0; j < n_services; ++j) {
    bool any = false;
    for (const Caregiver& c : inst.caregivers) any = any || c.can_serve[j];
    if (!any) {
      Caregiver& c = inst.caregivers[static_cast<std::size_t>(rng.uniform_int(1, n_caregivers)) - 1];
      c.can_serve[j] = 1;
      c.affinity[j] = rng.uniform_int(0, 5);
    }
  }
  return inst;
}

}  // namespace

GeneratorProfile GeneratorProfile::by_name(std::string_view name) {
  GeneratorProfile p;
  if (name == "default" || name.empty()) {
    p.name = "default";
  } else if (name == "tiny") {
    p.name = "tiny";
    p.days = 2;
    p.grid = 15;
    p.min_duration = 30;
    p.max_duration = 60;
    p.hard_min_width = 120;
    p.hard_max_width = 240;
    p.earliest_start = 480;
    p.latest_end = 1140;
    p.availability = TimeWindow{450, 1200};
    p.daily_max_cap = 0;
    p.compat_prob = 0.75;
    p.coord_range = 30;
  } else if (name == "solomon10") {
    p.name = "solomon10";
  } else if (name == "solomon15") {
    p.name = "solomon15";
    p.days = 5;
    p.hard_min_width = 150;
    p.hard_max_width = 300;
  } else {
    throw std::invalid_argument("unknown generator profile: " + std::string(name));
  }
  return p;
}

Instance generate_instance(int n_services, int n_caregivers, std::uint64_t seed,
                           const GeneratorProfile& profile) {
  bool clamped = false;
  if (n_services < 1) {
    n_services = 1;
    clamped = true;
  }
  if (n_caregivers < 1) {
    n_caregivers = 1;
    clamped = true;
  }
  if (clamped)
    std::cerr << "generate_instance: sizes clamped to minimum of 1\n";

  constexpr int kMaxAttempts = 64;
  Instance inst;
  int attempt = 0;
  for (; attempt < kMaxAttempts; ++attempt) {
    inst = build_attempt(n_services, n_caregivers,
                         seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt),
                         profile);
    if (greedy_probe(inst)) break;
  }

  inst.meta = Json{{"generator",
                    Json{{"profile", profile.name},
                         {"seed", seed},
                         {"attempt", attempt},
                         {"services", n_services},
                         {"caregivers", n_caregivers},
                         {"clamped", clamped},
                         {"soft_window_sampling", "uniform endpoints within hard window"},
                         {"affinity_sampling", "uniform 0..5 over compatible pairs"}}}};
  return inst;
}

}  // namespace hcsp

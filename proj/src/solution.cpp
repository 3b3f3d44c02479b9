#include "hcsp/solution.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hcsp {

ObjectiveWeights ObjectiveWeights::for_instance(const Instance& instance) {
  std::int64_t spread = 0;
  for (const Service& s : instance.services) {
    // On non-owned days both windows collapse, so the owned day attains the max.
    spread += (s.soft.start - s.hard.start) + (s.hard.end - s.soft.end);
  }
  ObjectiveWeights w;
  w.affinity = -std::max<std::int64_t>(1, spread);
  return w;
}

DayMetrics compute_day_metrics(const Route& route, const Instance& instance) {
  DayMetrics m;
  if (route.empty()) return m;

  const int n = route.size();
  m.day_start = route.start_times.front();
  m.day_end = route.start_times.back() + instance.service(route.services.back()).duration;
  m.span = m.day_end - m.day_start;

  for (int i = 0; i + 1 < n; ++i) {
    const int from = route.services[i];
    const int to = route.services[i + 1];
    const int gap = route.start_times[i + 1] -
                    (route.start_times[i] + instance.service(from).duration + instance.travel(from, to));
    if (gap > m.brk.largest) {  // earliest maximal gap wins ties
      m.brk.largest = gap;
      m.brk.gap_index = i;
    }
  }
  m.brk.unpaid = m.brk.largest >= instance.min_unpaid_break;
  m.brk.deducted = m.brk.unpaid ? m.brk.largest : 0;
  if (!m.brk.unpaid) m.brk.gap_index = m.brk.largest > 0 ? m.brk.gap_index : -1;
  m.paid = m.span - m.brk.deducted;

  for (int i = 0; i < n; ++i) {
    const Service& s = instance.service(route.services[i]);
    const int t = route.start_times[i];
    const TimeWindow soft = instance.soft_window(s.id, route.day);
    m.penalty += std::max(0, soft.start - t);
    m.penalty += std::max(0, t + s.duration - soft.end);
    m.affinity += instance.caregiver(route.caregiver_id).affinity_for(s.id);
  }
  return m;
}

Solution Solution::empty_solution(const Instance& instance) {
  Solution s;
  s.routes.resize(static_cast<std::size_t>(instance.num_caregivers()) * kDaysPerWeek);
  for (int cg = 1; cg <= instance.num_caregivers(); ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      Route& r = s.routes[slot(cg, d)];
      r.caregiver_id = cg;
      r.day = d;
    }
  return s;
}

std::string Solution::route_key() const {
  std::ostringstream os;
  for (const Route& r : routes) {
    if (r.empty()) continue;
    os << r.caregiver_id << '.' << r.day << ':';
    for (int s : r.services) os << s << ',';
    os << ';';
  }
  return os.str();
}

namespace {

// Coverage counts per service; throws/collects depending on caller.
std::vector<int> coverage_counts(const Solution& solution, const Instance& instance) {
  std::vector<int> counts(instance.num_services(), 0);
  for (const Route& r : solution.routes)
    for (int s : r.services)
      if (s >= 1 && s <= instance.num_services()) ++counts[s - 1];
  return counts;
}

}  // namespace

std::vector<Violation> check_feasibility(const Solution& solution, const Instance& instance) {
  std::vector<Violation> out;
  const auto counts = coverage_counts(solution, instance);
  for (int j = 0; j < instance.num_services(); ++j) {
    if (counts[j] == 0)
      out.push_back({3, "service " + std::to_string(j + 1) + " is not assigned"});
    else if (counts[j] > 1)
      out.push_back({4, "service " + std::to_string(j + 1) + " is assigned " +
                            std::to_string(counts[j]) + " times"});
  }

  for (const Route& r : solution.routes) {
    if (r.services.size() != r.start_times.size()) {
      out.push_back({6, "route " + std::to_string(r.caregiver_id) + "/" +
                            std::to_string(r.day) + ": services/start_times size mismatch"});
      continue;
    }
    if (r.empty()) continue;
    const Caregiver& cg = instance.caregiver(r.caregiver_id);

    for (int i = 0; i < r.size(); ++i) {
      const int sid = r.services[i];
      const Service& s = instance.service(sid);
      const int t = r.start_times[i];
      if (!cg.serves(sid))
        out.push_back({5, "caregiver " + std::to_string(cg.id) + " cannot serve service " +
                              std::to_string(sid)});
      if (s.day != r.day)
        out.push_back({6, "service " + std::to_string(sid) + " scheduled on day " +
                              std::to_string(r.day) + " but belongs to day " +
                              std::to_string(s.day)});
      if (t < s.hard.start || t + s.duration > s.hard.end)
        out.push_back({9, "service " + std::to_string(sid) + " at t=" + std::to_string(t) +
                              " violates hard window [" + std::to_string(s.hard.start) + ", " +
                              std::to_string(s.hard.end) + "]"});
    }

    for (int i = 0; i + 1 < r.size(); ++i) {
      const int a = r.services[i];
      const int b = r.services[i + 1];
      const int earliest =
          r.start_times[i] + instance.service(a).duration + instance.travel(a, b);
      if (r.start_times[i + 1] < earliest)
        out.push_back({10, "services " + std::to_string(a) + "->" + std::to_string(b) +
                               " overlap: next start " + std::to_string(r.start_times[i + 1]) +
                               " before " + std::to_string(earliest)});
    }

    const DayMetrics m = compute_day_metrics(r, instance);
    const TimeWindow& avail = cg.availability[r.day - 1];
    if (m.day_start < avail.start)
      out.push_back({11, "caregiver " + std::to_string(cg.id) + " day " + std::to_string(r.day) +
                             " starts before availability"});
    if (m.day_end > avail.end)
      out.push_back({12, "caregiver " + std::to_string(cg.id) + " day " + std::to_string(r.day) +
                             " ends after availability"});
    if (m.paid > cg.daily_max[r.day - 1])
      out.push_back({16, "caregiver " + std::to_string(cg.id) + " day " + std::to_string(r.day) +
                             " paid time " + std::to_string(m.paid) + " exceeds daily max " +
                             std::to_string(cg.daily_max[r.day - 1])});
  }
  return out;
}

ObjectivePair evaluate(const Solution& solution, const Instance& instance,
                       const ObjectiveWeights& weights) {
  const auto counts = coverage_counts(solution, instance);
  for (int j = 0; j < instance.num_services(); ++j)
    if (counts[j] != 1)
      throw std::invalid_argument("evaluate: service " + std::to_string(j + 1) +
                                  (counts[j] == 0 ? " uncovered" : " duplicated"));

  ObjectivePair obj;
  for (int cg = 1; cg <= instance.num_caregivers(); ++cg) {
    std::int64_t paid = 0;
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      const DayMetrics m = compute_day_metrics(solution.route(cg, d), instance);
      paid += m.paid;
      obj.welfare += weights.affinity * m.affinity + weights.penalty * m.penalty;
    }
    const std::int64_t extra = paid - instance.caregiver(cg).weekly_contract;
    obj.cost += weights.overtime * std::max<std::int64_t>(0, extra) + weights.paid_time * paid;
  }
  return obj;
}

EvaluatedSolution::EvaluatedSolution(Solution solution, const Instance& instance,
                                     const ObjectiveWeights& weights)
    : solution_(std::move(solution)), instance_(&instance), weights_(weights) {
  metrics_.resize(solution_.routes.size());
  weekly_paid_.assign(instance.num_caregivers(), 0);
  for (std::size_t i = 0; i < solution_.routes.size(); ++i) {
    metrics_[i] = compute_day_metrics(solution_.routes[i], instance);
    weekly_paid_[solution_.routes[i].caregiver_id - 1] += metrics_[i].paid;
  }
  recompute_objectives();
}

void EvaluatedSolution::replace_route(Route new_route) {
  const std::size_t i = Solution::slot(new_route.caregiver_id, new_route.day);
  weekly_paid_[new_route.caregiver_id - 1] -= metrics_[i].paid;
  solution_.routes[i] = std::move(new_route);
  metrics_[i] = compute_day_metrics(solution_.routes[i], *instance_);
  weekly_paid_[solution_.routes[i].caregiver_id - 1] += metrics_[i].paid;
  recompute_objectives();
}

ObjectivePair EvaluatedSolution::objectives_if_replaced(const Route& new_route,
                                                        const DayMetrics& new_metrics) const {
  const std::size_t i = Solution::slot(new_route.caregiver_id, new_route.day);
  const DayMetrics& old_metrics = metrics_[i];
  const Caregiver& cg = instance_->caregiver(new_route.caregiver_id);

  ObjectivePair obj = objectives_;
  obj.welfare += weights_.affinity * (new_metrics.affinity - old_metrics.affinity) +
                 weights_.penalty * (new_metrics.penalty - old_metrics.penalty);

  const std::int64_t weekly_old = weekly_paid_[new_route.caregiver_id - 1];
  const std::int64_t weekly_new = weekly_old - old_metrics.paid + new_metrics.paid;
  const auto overtime_of = [&](std::int64_t paid) {
    return std::max<std::int64_t>(0, paid - cg.weekly_contract);
  };
  obj.cost += weights_.paid_time * (weekly_new - weekly_old) +
              weights_.overtime * (overtime_of(weekly_new) - overtime_of(weekly_old));
  return obj;
}

void EvaluatedSolution::recompute_objectives() {
  objectives_ = ObjectivePair{};
  for (const DayMetrics& m : metrics_)
    objectives_.welfare += weights_.affinity * m.affinity + weights_.penalty * m.penalty;
  for (int cg = 1; cg <= instance_->num_caregivers(); ++cg) {
    const std::int64_t extra = weekly_paid_[cg - 1] - instance_->caregiver(cg).weekly_contract;
    objectives_.cost += weights_.overtime * std::max<std::int64_t>(0, extra) +
                        weights_.paid_time * weekly_paid_[cg - 1];
  }
}

Json solution_to_json(const EvaluatedSolution& solution, const std::string& instance_name) {
  Json j;
  j["instance"] = instance_name;
  j["objectives"] = {{"cost", solution.objectives().cost},
                     {"welfare", solution.objectives().welfare}};
  Json routes = Json::array();
  Json overtime = Json::object();
  const Instance& inst = solution.instance();
  for (int cg = 1; cg <= inst.num_caregivers(); ++cg) {
    overtime[std::to_string(cg)] = solution.overtime(cg);
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      const Route& r = solution.solution().route(cg, d);
      if (r.empty()) continue;
      const DayMetrics& m = solution.metrics(cg, d);
      Json e;
      e["caregiver"] = cg;
      e["day"] = d;
      e["services"] = r.services;
      e["start_times"] = r.start_times;
      e["metrics"] = {{"span", m.span},
                      {"paid", m.paid},
                      {"break", m.brk.largest},
                      {"break_unpaid", m.brk.unpaid},
                      {"idle", m.span - m.brk.deducted -
                                   [&] {
                                     int busy = 0;
                                     for (int i = 0; i < r.size(); ++i) {
                                       busy += inst.service(r.services[i]).duration;
                                       if (i + 1 < r.size())
                                         busy += inst.travel(r.services[i], r.services[i + 1]);
                                     }
                                     return busy;
                                   }()},
                      {"penalty", m.penalty},
                      {"affinity", m.affinity}};
      routes.push_back(std::move(e));
    }
  }
  j["routes"] = std::move(routes);
  j["overtime"] = std::move(overtime);
  return j;
}

Solution solution_from_json(const Json& j, const Instance& instance) {
  Solution s = Solution::empty_solution(instance);
  for (const Json& e : j.at("routes")) {
    const int cg = e.at("caregiver").get<int>();
    const int d = e.at("day").get<int>();
    Route& r = s.route(cg, d);
    r.services = e.at("services").get<std::vector<int>>();
    r.start_times = e.at("start_times").get<std::vector<int>>();
  }
  return s;
}

}  // namespace hcsp

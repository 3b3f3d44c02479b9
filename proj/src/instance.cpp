#include "hcsp/instance.hpp"

#include <fstream>
#include <sstream>

namespace hcsp {

namespace {

std::string svc_path(int idx, const char* field) {
  std::ostringstream os;
  os << "services[" << idx << "]." << field;
  return os.str();
}

std::string cg_path(int idx, const char* field) {
  std::ostringstream os;
  os << "caregivers[" << idx << "]." << field;
  return os.str();
}

}  // namespace

std::vector<std::string> Instance::validate() const {
  std::vector<std::string> issues;
  const int n = num_services();

  if (min_unpaid_break <= 0) issues.push_back("pi_min: must be > 0");

  for (int i = 0; i < n; ++i) {
    const Service& s = services[i];
    if (s.id != i + 1) issues.push_back(svc_path(i, "id: ids must be dense 1..|S|"));
    if (s.duration < 0) issues.push_back(svc_path(i, "duration: must be >= 0"));
    if (s.day < 1 || s.day > kDaysPerWeek) issues.push_back(svc_path(i, "day: must be in 1..7"));
    if (s.hard.start < 0 || s.hard.end >= kMinutesPerDay)
      issues.push_back(svc_path(i, "hard: must lie within [0, 1440)"));
    if (!(s.hard.start <= s.soft.start))
      issues.push_back(svc_path(i, "soft.start: below hard.start"));
    if (!(s.soft.start <= s.soft.end))
      issues.push_back(svc_path(i, "soft: start must be <= end"));
    if (!(s.soft.end <= s.hard.end))
      issues.push_back(svc_path(i, "soft.end: above hard.end"));
    if (s.duration > s.hard.width())
      issues.push_back(svc_path(i, "duration: exceeds hard window width"));
  }

  for (int i = 0; i < num_caregivers(); ++i) {
    const Caregiver& c = caregivers[i];
    if (c.id != i + 1) issues.push_back(cg_path(i, "id: ids must be dense 1..|N|"));
    if (c.weekly_contract < 0) issues.push_back(cg_path(i, "weekly_contract: must be >= 0"));
    for (int d = 0; d < kDaysPerWeek; ++d) {
      const TimeWindow& av = c.availability[d];
      if (av.start > av.end) issues.push_back(cg_path(i, "availability: start > end"));
      if (c.daily_max[d] < 0 || c.daily_max[d] > av.width())
        issues.push_back(cg_path(i, "daily_max: outside [0, availability width]"));
    }
    if (static_cast<int>(c.can_serve.size()) != n)
      issues.push_back(cg_path(i, "can_serve: size must equal |S|"));
    if (static_cast<int>(c.affinity.size()) != n)
      issues.push_back(cg_path(i, "affinity: size must equal |S|"));
    for (std::size_t j = 0; j < c.affinity.size() && j < c.can_serve.size(); ++j) {
      if (c.affinity[j] < 0 || c.affinity[j] > 5)
        issues.push_back(cg_path(i, "affinity: levels must be in 0..5"));
      if (!c.can_serve[j] && c.affinity[j] != 0)
        issues.push_back(cg_path(i, "affinity: must be 0 for incompatible services"));
    }
  }

  if (travel.size() != n) {
    issues.push_back("travel: matrix size must equal |S|");
  } else {
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        if (travel(j, k) < 0) {
          issues.push_back("travel: entries must be >= 0");
          j = n + 1;
          break;
        }
  }
  return issues;
}

Json instance_to_json(const Instance& instance) {
  Json j;
  j["meta"] = instance.meta;
  j["pi_min"] = instance.min_unpaid_break;

  Json services = Json::array();
  for (const Service& s : instance.services) {
    Json e;
    e["id"] = s.id;
    e["user_id"] = s.user_id;
    e["duration"] = s.duration;
    e["day"] = s.day;
    e["hard"] = {s.hard.start, s.hard.end};
    e["soft"] = {s.soft.start, s.soft.end};
    services.push_back(std::move(e));
  }
  j["services"] = std::move(services);

  Json caregivers = Json::array();
  for (const Caregiver& c : instance.caregivers) {
    Json e;
    e["id"] = c.id;
    e["weekly_contract"] = c.weekly_contract;
    Json avail = Json::object();
    Json dmax = Json::object();
    for (int d = 0; d < kDaysPerWeek; ++d) {
      const std::string key = std::to_string(d + 1);
      avail[key] = {c.availability[d].start, c.availability[d].end};
      dmax[key] = c.daily_max[d];
    }
    e["availability"] = std::move(avail);
    e["daily_max"] = std::move(dmax);
    e["can_serve"] = c.can_serve;
    e["affinity"] = c.affinity;
    caregivers.push_back(std::move(e));
  }
  j["caregivers"] = std::move(caregivers);

  Json rows = Json::array();
  const int n = instance.num_services();
  for (int from = 1; from <= n; ++from) {
    Json row = Json::array();
    for (int to = 1; to <= n; ++to) row.push_back(instance.travel(from, to));
    rows.push_back(std::move(row));
  }
  j["travel"] = std::move(rows);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance instance;
  instance.meta = j.value("meta", Json::object());
  instance.min_unpaid_break = j.at("pi_min").get<int>();

  for (const Json& e : j.at("services")) {
    Service s;
    s.id = e.at("id").get<int>();
    s.user_id = e.value("user_id", 0);
    s.duration = e.at("duration").get<int>();
    s.day = e.at("day").get<int>();
    s.hard = TimeWindow{e.at("hard").at(0).get<int>(), e.at("hard").at(1).get<int>()};
    s.soft = TimeWindow{e.at("soft").at(0).get<int>(), e.at("soft").at(1).get<int>()};
    instance.services.push_back(s);
  }

  const int n = instance.num_services();
  for (const Json& e : j.at("caregivers")) {
    Caregiver c;
    c.id = e.at("id").get<int>();
    c.weekly_contract = e.at("weekly_contract").get<int>();
    for (int d = 0; d < kDaysPerWeek; ++d) {
      const std::string key = std::to_string(d + 1);
      const Json& av = e.at("availability").at(key);
      c.availability[d] = TimeWindow{av.at(0).get<int>(), av.at(1).get<int>()};
      c.daily_max[d] = e.at("daily_max").at(key).get<int>();
    }
    c.can_serve = e.at("can_serve").get<std::vector<std::uint8_t>>();
    c.affinity = e.at("affinity").get<std::vector<int>>();
    instance.caregivers.push_back(std::move(c));
  }

  instance.travel = TravelMatrix(n);
  const Json& rows = j.at("travel");
  for (int from = 1; from <= n; ++from)
    for (int to = 1; to <= n; ++to)
      instance.travel.set(from, to, rows.at(from - 1).at(to - 1).get<int>());

  std::vector<std::string> issues = instance.validate();
  if (!issues.empty()) {
    std::string what = "invalid instance (" + std::to_string(issues.size()) + " issue(s)):";
    for (const std::string& s : issues) what += "\n  " + s;
    throw ValidationError(what, std::move(issues));
  }
  return instance;
}

std::string to_canonical_json(const Instance& instance) {
  // nlohmann::json orders object keys lexicographically, which together with
  // the fixed array layouts gives a canonical byte representation.
  return instance_to_json(instance).dump(2) + "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("parse error in " + path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path.string());
  out << to_canonical_json(instance);
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

}  // namespace hcsp

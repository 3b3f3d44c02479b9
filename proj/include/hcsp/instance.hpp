#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hcsp {

using Json = nlohmann::json;

constexpr int kDaysPerWeek = 7;
constexpr int kMinutesPerDay = 1440;

// Closed interval [start, end] in integer minutes from day start.
struct TimeWindow {
  int start = 0;
  int end = 0;

  int width() const { return end - start; }
  bool contains(int t) const { return start <= t && t <= end; }
  bool operator==(const TimeWindow&) const = default;
};

// A service visit at a user's home. Each service belongs to exactly one day;
// the hard window bounds where it must start and finish, the soft window is
// the user's preference (deviations are penalized, not forbidden).
struct Service {
  int id = 0;       // dense, 1-based
  int user_id = 0;
  int duration = 0;  // minutes
  int day = 1;       // 1..7
  TimeWindow hard;
  TimeWindow soft;

  bool operator==(const Service&) const = default;
};

struct Caregiver {
  int id = 0;  // dense, 1-based
  int weekly_contract = 0;                          // agreed paid minutes per week
  std::array<TimeWindow, kDaysPerWeek> availability{};  // [day-1]
  std::array<int, kDaysPerWeek> daily_max{};            // [day-1], minutes
  std::vector<std::uint8_t> can_serve;  // [service id - 1]
  std::vector<int> affinity;            // [service id - 1], 0..5

  bool serves(int service_id) const { return can_serve[service_id - 1] != 0; }
  int affinity_for(int service_id) const { return affinity[service_id - 1]; }
  bool operator==(const Caregiver&) const = default;
};

// Travel times between real services, in minutes. The end-of-day dummy has
// zero travel from everywhere and is not stored.
class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(int n) : n_(n), minutes_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  int operator()(int from_id, int to_id) const {
    return minutes_[index(from_id, to_id)];
  }
  void set(int from_id, int to_id, int minutes) {
    minutes_[index(from_id, to_id)] = minutes;
  }
  const std::vector<int>& raw() const { return minutes_; }
  bool operator==(const TravelMatrix&) const = default;

 private:
  std::size_t index(int from_id, int to_id) const {
    return static_cast<std::size_t>(from_id - 1) * n_ + (to_id - 1);
  }
  int n_ = 0;
  std::vector<int> minutes_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string what, std::vector<std::string> issues)
      : std::runtime_error(std::move(what)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Immutable problem data. Safe to share across concurrent solver runs once
// constructed.
struct Instance {
  std::vector<Service> services;
  std::vector<Caregiver> caregivers;
  TravelMatrix travel;
  int min_unpaid_break = 120;  // minimum break length to be unpaid
  Json meta = Json::object();

  int num_services() const { return static_cast<int>(services.size()); }
  int num_caregivers() const { return static_cast<int>(caregivers.size()); }
  const Service& service(int id) const { return services[id - 1]; }
  const Caregiver& caregiver(int id) const { return caregivers[id - 1]; }

  // Window of a service on an arbitrary day. On days the service does not
  // belong to, the window collapses to a point (nothing can be scheduled).
  TimeWindow hard_window(int service_id, int day) const {
    const Service& s = service(service_id);
    if (day == s.day) return s.hard;
    return TimeWindow{s.hard.start, s.hard.start};
  }
  TimeWindow soft_window(int service_id, int day) const {
    const Service& s = service(service_id);
    if (day == s.day) return s.soft;
    return TimeWindow{s.soft.start, s.soft.start};
  }

  // Returns the list of violated invariants, with field paths. Empty = valid.
  std::vector<std::string> validate() const;
};

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// Canonical serialization: keys sorted, fixed field order, 2-space indent.
// Two saves of the same instance produce identical bytes.
std::string to_canonical_json(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace hcsp

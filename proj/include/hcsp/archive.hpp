#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hcsp/solution.hpp"

namespace hcsp {

// Mutually non-dominated set, kept sorted by cost ascending (hence welfare
// strictly descending). Duplicate objective pairs keep the first
// representative. Comparisons are exact integer comparisons.
template <typename Payload>
class ParetoArchive {
 public:
  struct Entry {
    ObjectivePair objectives;
    Payload payload;
    std::string provenance;
  };

  // Inserts the candidate unless it is dominated by (or equal to) an existing
  // entry; removes entries the candidate dominates. Returns whether the
  // archive changed.
  bool update(const ObjectivePair& obj, Payload payload, std::string provenance = {}) {
    for (const Entry& e : entries_)
      if (e.objectives == obj || dominates(e.objectives, obj)) return false;
    std::erase_if(entries_, [&](const Entry& e) { return dominates(obj, e.objectives); });
    Entry entry{obj, std::move(payload), std::move(provenance)};
    const auto pos = std::lower_bound(
        entries_.begin(), entries_.end(), entry.objectives,
        [](const Entry& e, const ObjectivePair& o) { return e.objectives < o; });
    entries_.insert(pos, std::move(entry));
    return true;
  }

  // Objective pairs, cost ascending / welfare strictly descending.
  std::vector<ObjectivePair> front() const {
    std::vector<ObjectivePair> f;
    f.reserve(entries_.size());
    for (const Entry& e : entries_) f.push_back(e.objectives);
    return f;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

}  // namespace hcsp

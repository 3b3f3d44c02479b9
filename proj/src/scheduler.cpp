#include "hcsp/scheduler.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace hcsp {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
// Scalarization factor for lexicographic objectives: primary*kLex + secondary
// is exact because both terms are integral and the secondary stays below kLex.
constexpr std::int64_t kLex = 1'000'000;

struct Chain {
  std::vector<int> ids;
  std::vector<int> dur;
  std::vector<int> travel;  // between consecutive positions, size m-1
  std::vector<TimeWindow> hard;
  std::vector<TimeWindow> soft;
  TimeWindow avail;
  int daily_max = 0;
  int min_unpaid = 0;

  int size() const { return static_cast<int>(ids.size()); }
  int link(int i) const { return dur[i] + travel[i]; }  // min start-to-start offset
};

Chain build_chain(std::span<const int> order, const Instance& inst, const Caregiver& cg,
                  int day) {
  Chain c;
  c.avail = cg.availability[day - 1];
  c.daily_max = cg.daily_max[day - 1];
  c.min_unpaid = inst.min_unpaid_break;
  const int m = static_cast<int>(order.size());
  c.ids.assign(order.begin(), order.end());
  c.dur.resize(m);
  c.hard.resize(m);
  c.soft.resize(m);
  c.travel.assign(m > 0 ? m - 1 : 0, 0);
  for (int i = 0; i < m; ++i) {
    c.dur[i] = inst.service(order[i]).duration;
    c.hard[i] = inst.hard_window(order[i], day);
    c.soft[i] = inst.soft_window(order[i], day);
    if (i + 1 < m) c.travel[i] = inst.travel(order[i], order[i + 1]);
  }
  return c;
}

bool bounds_for_offsets(const Chain& c, std::span<const int> off, std::vector<int>& e,
                        std::vector<int>& l) {
  const int m = c.size();
  e.resize(m);
  l.resize(m);
  for (int i = 0; i < m; ++i)
    e[i] = std::max(c.hard[i].start, i == 0 ? c.avail.start : e[i - 1] + off[i - 1]);
  for (int i = m - 1; i >= 0; --i) {
    l[i] = c.hard[i].end - c.dur[i];
    if (i == m - 1) l[i] = std::min(l[i], c.avail.end - c.dur[i]);
    if (i + 1 < m) l[i] = std::min(l[i], l[i + 1] - off[i]);
    if (e[i] > l[i]) return false;
  }
  return true;
}

std::int64_t penalty_at(const Chain& c, int i, int t) {
  return std::max(0, c.soft[i].start - t) + std::max(0, t + c.dur[i] - c.soft[i].end);
}

// One designated-break subproblem: the chain offsets force a gap of at least
// pi_min at `gap` (or none), and the objective is
//   pen_scale * penalty + coeff_j * t_j + constant,
// which encodes the lexicographic blend of penalization and cost for that
// break choice. Candidate start values lie on window endpoints propagated
// through the offset chain (optima of piecewise-linear objectives over chain
// polytopes sit on those points; `extra` widens the grid when the daily
// maximum couples the endpoints).
class Subproblem {
 public:
  static std::optional<Subproblem> make(const Chain& c, int gap, SchedulePriority prio,
                                        std::span<const int> extra) {
    Subproblem sp(c);
    const int m = c.size();
    sp.gap_ = gap;
    sp.off_.assign(std::max(0, m - 1), 0);
    for (int i = 0; i + 1 < m; ++i)
      sp.off_[i] = c.link(i) + (i == gap ? c.min_unpaid : 0);
    if (!bounds_for_offsets(c, sp.off_, sp.e_, sp.l_)) return std::nullopt;

    sp.pen_scale_ = prio == SchedulePriority::PenaltyFirst ? kLex : 1;
    const std::int64_t cost_scale = prio == SchedulePriority::CostFirst ? kLex : 1;
    sp.coeff_.assign(m, 0);
    sp.constant_ = c.dur[m - 1];
    sp.coeff_[m - 1] += cost_scale;
    sp.coeff_[0] -= cost_scale;
    if (gap >= 0) {
      sp.coeff_[gap + 1] -= cost_scale;
      sp.coeff_[gap] += cost_scale;
      sp.constant_ += c.link(gap);
    }
    sp.constant_ *= cost_scale;

    sp.build_events(extra);
    return sp;
  }

  const Chain& chain() const { return *c_; }
  int gap() const { return gap_; }
  std::int64_t constant() const { return constant_; }
  const std::vector<int>& events(int j) const { return ev_[j]; }

  std::int64_t psi(int j, int t) const {
    return pen_scale_ * penalty_at(*c_, j, t) + coeff_[j] * t;
  }

  struct Segment {
    std::int64_t value = kInf;  // excludes the subproblem constant
    std::vector<int> times;
  };

  // Lexicographically-earliest optimum over positions [lo, hi]. Optional
  // pinned endpoints, floor on the first start, cap on the last start.
  Segment solve(int lo, int hi, std::optional<int> pin_lo, std::optional<int> pin_hi,
                std::optional<int> floor_lo, std::optional<int> cap_hi) const {
    Segment res;
    const int len = hi - lo + 1;
    std::vector<std::vector<int>> ev(len);
    for (int j = 0; j < len; ++j) {
      ev[j] = ev_[lo + j];
      if (j == 0 && pin_lo) ev[j] = contains(ev[j], *pin_lo) ? std::vector<int>{*pin_lo}
                                                             : std::vector<int>{};
      if (j == len - 1 && pin_hi)
        ev[j] = contains(ev[j], *pin_hi) ? std::vector<int>{*pin_hi} : std::vector<int>{};
      if (j == 0 && floor_lo)
        ev[j].erase(ev[j].begin(), std::lower_bound(ev[j].begin(), ev[j].end(), *floor_lo));
      if (j == len - 1 && cap_hi)
        ev[j].erase(std::upper_bound(ev[j].begin(), ev[j].end(), *cap_hi), ev[j].end());
      if (ev[j].empty()) return res;
    }

    // Suffix DP over the segment.
    std::vector<std::vector<std::int64_t>> S(len), sufmin(len);
    for (int j = len - 1; j >= 0; --j) {
      const auto& E = ev[j];
      S[j].assign(E.size(), kInf);
      for (std::size_t i = 0; i < E.size(); ++i) {
        std::int64_t tail = 0;
        if (j + 1 < len) {
          const auto& En = ev[j + 1];
          const auto it =
              std::lower_bound(En.begin(), En.end(), E[i] + off_[lo + j]);
          if (it == En.end()) continue;
          tail = sufmin[j + 1][static_cast<std::size_t>(it - En.begin())];
          if (tail >= kInf) continue;
        }
        S[j][i] = psi(lo + j, E[i]) + tail;
      }
      sufmin[j].assign(E.size() + 1, kInf);
      for (std::size_t i = E.size(); i-- > 0;)
        sufmin[j][i] = std::min(S[j][i], sufmin[j][i + 1]);
    }
    if (sufmin[0][0] >= kInf) return res;
    res.value = sufmin[0][0];

    res.times.resize(len);
    std::int64_t remaining = res.value;
    int prev = 0;
    for (int j = 0; j < len; ++j) {
      bool found = false;
      for (std::size_t i = 0; i < ev[j].size(); ++i) {
        if (j > 0 && ev[j][i] < prev + off_[lo + j - 1]) continue;
        if (S[j][i] == remaining) {
          res.times[j] = prev = ev[j][i];
          remaining -= psi(lo + j, prev);
          found = true;
          break;
        }
      }
      if (!found) {
        res.value = kInf;
        res.times.clear();
        return res;
      }
    }
    return res;
  }

 private:
  explicit Subproblem(const Chain& c) : c_(&c) {}

  static bool contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  }

  void build_events(std::span<const int> extra) {
    const Chain& c = *c_;
    const int m = c.size();
    ev_.assign(m, {});
    std::vector<std::int64_t> prefix(m, 0);
    for (int i = 1; i < m; ++i) prefix[i] = prefix[i - 1] + off_[i - 1];

    std::vector<int> base;
    for (int k = 0; k < m; ++k) {
      base.clear();
      base.push_back(c.hard[k].start);
      base.push_back(c.hard[k].end - c.dur[k]);
      base.push_back(c.soft[k].start);
      base.push_back(c.soft[k].end - c.dur[k]);
      if (k == 0) base.push_back(c.avail.start);
      if (k == m - 1) base.push_back(c.avail.end - c.dur[k]);
      for (int b0 : base)
        for (int x : extra) {
          const std::int64_t b = static_cast<std::int64_t>(b0) + x;
          for (int j = 0; j < m; ++j) {
            const std::int64_t v = b - (prefix[k] - prefix[j]);
            if (v >= e_[j] && v <= l_[j]) ev_[j].push_back(static_cast<int>(v));
          }
        }
    }
    for (int j = 0; j < m; ++j) {
      ev_[j].push_back(e_[j]);
      ev_[j].push_back(l_[j]);
      std::sort(ev_[j].begin(), ev_[j].end());
      ev_[j].erase(std::unique(ev_[j].begin(), ev_[j].end()), ev_[j].end());
    }
  }

  const Chain* c_;
  int gap_ = -1;
  std::vector<int> off_;
  std::vector<int> e_, l_;
  std::vector<std::vector<int>> ev_;
  std::int64_t pen_scale_ = 1;
  std::vector<std::int64_t> coeff_;
  std::int64_t constant_ = 0;
};

struct Candidate {
  std::int64_t value = kInf;
  std::vector<int> times;
};

void consider(Candidate& best, std::int64_t value, std::vector<int> times) {
  if (value < best.value || (value == best.value && !times.empty() && times < best.times)) {
    best.value = value;
    best.times = std::move(times);
  }
}

int paid_time_of(const Chain& c, const std::vector<int>& times) {
  const int m = c.size();
  const int span = times[m - 1] + c.dur[m - 1] - times[0];
  int largest = 0;
  for (int i = 0; i + 1 < m; ++i)
    largest = std::max(largest, times[i + 1] - times[i] - c.link(i));
  return span - (largest >= c.min_unpaid ? largest : 0);
}

// Chain solver with optional equality links and pinned positions. Used by the
// daily-maximum fallback, where the tight span cap turns the designated gap
// into an exact offset between its endpoints. Candidate values are window
// anchors and pins propagated along the links.
struct LinkSpec {
  int offset = 0;
  bool equality = false;
};

std::optional<Candidate> solve_anchored_chain(const Chain& c, std::span<const LinkSpec> links,
                                              std::int64_t pen_scale,
                                              std::span<const std::int64_t> coeff,
                                              std::int64_t constant,
                                              std::span<const std::pair<int, int>> pins) {
  const int m = c.size();
  std::vector<int> lo(m), hi(m);
  for (int j = 0; j < m; ++j) {
    lo[j] = std::max(c.hard[j].start, j == 0 ? c.avail.start : 0);
    hi[j] = c.hard[j].end - c.dur[j];
    if (j == m - 1) hi[j] = std::min(hi[j], c.avail.end - c.dur[j]);
  }
  for (const auto& [pos, value] : pins) {
    lo[pos] = std::max(lo[pos], value);
    hi[pos] = std::min(hi[pos], value);
  }
  // two interval-propagation sweeps handle both link kinds
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j + 1 < m; ++j) {
      lo[j + 1] = std::max(lo[j + 1], lo[j] + links[j].offset);
      if (links[j].equality) hi[j + 1] = std::min(hi[j + 1], hi[j] + links[j].offset);
    }
    for (int j = m - 1; j > 0; --j) {
      hi[j - 1] = std::min(hi[j - 1], hi[j] - links[j - 1].offset);
      if (links[j - 1].equality) lo[j - 1] = std::max(lo[j - 1], lo[j] - links[j - 1].offset);
    }
  }
  for (int j = 0; j < m; ++j)
    if (lo[j] > hi[j]) return std::nullopt;

  // anchors: window endpoints everywhere, pins, availability edges
  std::vector<std::int64_t> prefix(m, 0);
  for (int j = 1; j < m; ++j) prefix[j] = prefix[j - 1] + links[j - 1].offset;
  std::vector<std::vector<int>> ev(m);
  const auto propagate = [&](int k, std::int64_t v) {
    for (int j = 0; j < m; ++j) {
      const std::int64_t t = v - (prefix[k] - prefix[j]);
      if (t >= lo[j] && t <= hi[j]) ev[j].push_back(static_cast<int>(t));
    }
  };
  for (int k = 0; k < m; ++k) {
    propagate(k, c.hard[k].start);
    propagate(k, c.hard[k].end - c.dur[k]);
    propagate(k, c.soft[k].start);
    propagate(k, c.soft[k].end - c.dur[k]);
    if (k == 0) propagate(k, c.avail.start);
    if (k == m - 1) propagate(k, c.avail.end - c.dur[k]);
  }
  for (const auto& [pos, value] : pins) propagate(pos, value);
  for (int j = 0; j < m; ++j) {
    ev[j].push_back(lo[j]);
    ev[j].push_back(hi[j]);
    std::sort(ev[j].begin(), ev[j].end());
    ev[j].erase(std::unique(ev[j].begin(), ev[j].end()), ev[j].end());
  }

  const auto psi = [&](int j, int t) {
    return pen_scale * penalty_at(c, j, t) + coeff[j] * t;
  };

  std::vector<std::vector<std::int64_t>> S(m), sufmin(m);
  for (int j = m - 1; j >= 0; --j) {
    const auto& E = ev[j];
    S[j].assign(E.size(), kInf);
    for (std::size_t i = 0; i < E.size(); ++i) {
      std::int64_t tail = 0;
      if (j + 1 < m) {
        const auto& En = ev[j + 1];
        if (links[j].equality) {
          const auto it = std::lower_bound(En.begin(), En.end(), E[i] + links[j].offset);
          if (it == En.end() || *it != E[i] + links[j].offset) continue;
          tail = S[j + 1][static_cast<std::size_t>(it - En.begin())];
        } else {
          const auto it = std::lower_bound(En.begin(), En.end(), E[i] + links[j].offset);
          if (it == En.end()) continue;
          tail = sufmin[j + 1][static_cast<std::size_t>(it - En.begin())];
        }
        if (tail >= kInf) continue;
      }
      S[j][i] = psi(j, E[i]) + tail;
    }
    sufmin[j].assign(E.size() + 1, kInf);
    for (std::size_t i = E.size(); i-- > 0;)
      sufmin[j][i] = std::min(S[j][i], sufmin[j][i + 1]);
  }
  if (sufmin[0][0] >= kInf) return std::nullopt;

  Candidate res;
  res.value = sufmin[0][0] + constant;
  res.times.resize(m);
  std::int64_t remaining = sufmin[0][0];
  int prev = 0;
  for (int j = 0; j < m; ++j) {
    bool found = false;
    for (std::size_t i = 0; i < ev[j].size(); ++i) {
      if (j > 0) {
        if (links[j - 1].equality && ev[j][i] != prev + links[j - 1].offset) continue;
        if (!links[j - 1].equality && ev[j][i] < prev + links[j - 1].offset) continue;
      }
      if (S[j][i] == remaining) {
        res.times[j] = prev = ev[j][i];
        remaining -= psi(j, prev);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return res;
}

Candidate solve_unconstrained(const Chain& c, SchedulePriority prio) {
  const int m = c.size();
  const int extra[] = {0};
  Candidate best;
  for (int gap = -1; gap + 1 < m; ++gap) {
    auto sp = Subproblem::make(c, gap, prio, extra);
    if (!sp) continue;
    auto r = sp->solve(0, m - 1, std::nullopt, std::nullopt, std::nullopt, std::nullopt);
    if (r.value >= kInf) continue;
    consider(best, r.value + sp->constant(), std::move(r.times));
  }
  return best;
}

// Cost coefficients of "span minus designated unpaid gap"; gap = -1 means no
// designated break. Returns the scaled constant term.
std::int64_t cost_terms(const Chain& c, int gap, std::int64_t scale,
                        std::vector<std::int64_t>& coeff) {
  const int m = c.size();
  coeff.assign(m, 0);
  std::int64_t constant = c.dur[m - 1];
  coeff[m - 1] += scale;
  coeff[0] -= scale;
  if (gap >= 0) {
    coeff[gap + 1] -= scale;
    coeff[gap] += scale;
    constant += c.link(gap);
  }
  return constant * scale;
}

// Exact solve with the daily maximum active. Per designated-break subproblem
// the objective is convex, so the constrained optimum either is the
// unconstrained one (when its designated paid time fits) or sits on the
// tight boundary paid = daily_max; there the span cap becomes an exact offset
// between the gap endpoints, solvable by the anchored-chain solver over
// enumerated (first, last) start candidates.
Candidate solve_daily_capped(const Chain& c, SchedulePriority prio) {
  const int m = c.size();
  const int V = c.daily_max;
  const int P = c.min_unpaid;
  const int dur_last = c.dur[m - 1];
  const std::vector<int> extra = {0,       P,        -P,       V,        -V,
                                  V + P,   -(V + P), V - P,    P - V,    1,
                                  -1,      P + 1,    -(P + 1), V + 1,    -(V + 1),
                                  P - 1,   1 - P,    V - 1,    1 - V};
  Candidate best;
  const std::int64_t pen_scale = prio == SchedulePriority::PenaltyFirst ? kLex : 1;
  const std::int64_t cost_scale = prio == SchedulePriority::CostFirst ? kLex : 1;

  for (int gap = -1; gap + 1 < m || gap == -1; ++gap) {
    auto sp = Subproblem::make(c, gap, prio, extra);
    if (sp) {
      // case A: the unconstrained subproblem optimum already fits the cap
      auto r = sp->solve(0, m - 1, std::nullopt, std::nullopt, std::nullopt, std::nullopt);
      if (r.value < kInf) {
        const int span = r.times[m - 1] + dur_last - r.times[0];
        const int designated =
            gap >= 0 ? r.times[gap + 1] - r.times[gap] - c.link(gap) : 0;
        if (span - designated <= V) {
          consider(best, r.value + sp->constant(), std::move(r.times));
          continue;  // convexity: nothing better inside this subproblem
        }
      }

      // case B: the cap is tight: span - designated gap = V
      std::vector<LinkSpec> links(static_cast<std::size_t>(std::max(0, m - 1)));
      std::vector<std::int64_t> coeff;
      const std::int64_t constant = cost_terms(c, gap, cost_scale, coeff);
      for (int t0 : sp->events(0)) {
        if (gap < 0) {
          // no designated break: span = V exactly
          const int tl = t0 + V - dur_last;
          for (int j = 0; j + 1 < m; ++j) links[static_cast<std::size_t>(j)] = {c.link(j), false};
          const std::pair<int, int> pins[] = {{0, t0}, {m - 1, tl}};
          auto res = solve_anchored_chain(c, links, pen_scale, coeff, constant, pins);
          if (res) consider(best, res->value, std::move(res->times));
        } else {
          for (int tl : sp->events(m - 1)) {
            const int u = tl + dur_last - t0 - V;  // designated gap size
            if (u < P) continue;
            for (int j = 0; j + 1 < m; ++j)
              links[static_cast<std::size_t>(j)] = {c.link(j) + (j == gap ? u : 0), j == gap};
            const std::pair<int, int> pins[] = {{0, t0}, {m - 1, tl}};
            auto res = solve_anchored_chain(c, links, pen_scale, coeff, constant, pins);
            if (res) consider(best, res->value, std::move(res->times));
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

ScheduleBounds compute_bounds(std::span<const int> order, const Instance& instance,
                              const Caregiver& caregiver, int day) {
  ScheduleBounds b;
  const Chain c = build_chain(order, instance, caregiver, day);
  const int m = c.size();
  if (m == 0) {
    b.feasible = true;
    return b;
  }
  std::vector<int> off(m - 1);
  for (int i = 0; i + 1 < m; ++i) off[i] = c.link(i);
  b.feasible = bounds_for_offsets(c, off, b.earliest, b.latest);
  return b;
}

std::optional<std::vector<int>> schedule_fixed_order(std::span<const int> order,
                                                     const Instance& instance,
                                                     const Caregiver& caregiver, int day,
                                                     SchedulePriority priority) {
  const Chain c = build_chain(order, instance, caregiver, day);
  const int m = c.size();
  if (m == 0) return std::vector<int>{};

  Candidate best = solve_unconstrained(c, priority);
  if (best.value >= kInf) return std::nullopt;
  if (paid_time_of(c, best.times) <= c.daily_max) return best.times;

  Candidate capped = solve_daily_capped(c, priority);
  if (capped.value >= kInf) return std::nullopt;
  return capped.times;
}

std::optional<Route> make_scheduled_route(std::vector<int> order, const Instance& instance,
                                          int caregiver_id, int day, SchedulePriority priority) {
  auto times = schedule_fixed_order(order, instance, instance.caregiver(caregiver_id), day,
                                    priority);
  if (!times) return std::nullopt;
  Route r;
  r.caregiver_id = caregiver_id;
  r.day = day;
  r.services = std::move(order);
  r.start_times = std::move(*times);
  return r;
}

}  // namespace hcsp

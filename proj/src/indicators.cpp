#include "hcsp/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcsp {

namespace {

double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

double nearest_distance(const Point2& p, const std::vector<Point2>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& q : set) best = std::min(best, sq_dist(p, q));
  return std::sqrt(best);
}

void require_nonempty(const std::vector<Point2>& s, const char* which) {
  if (s.empty()) throw std::invalid_argument(std::string(which) + " set is empty");
}

}  // namespace

double coverage(const std::vector<Point2>& reference, const std::vector<Point2>& approx) {
  require_nonempty(approx, "approximation");
  std::size_t dominated = 0;
  for (const Point2& x : approx)
    for (const Point2& y : reference)
      if (point_dominates(y, x)) {
        ++dominated;
        break;
      }
  return static_cast<double>(dominated) / static_cast<double>(approx.size());
}

double generational_distance(const std::vector<Point2>& reference,
                             const std::vector<Point2>& approx) {
  require_nonempty(reference, "reference");
  require_nonempty(approx, "approximation");
  double sum = 0.0;
  for (const Point2& x : approx) {
    const double d = nearest_distance(x, reference);
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(approx.size());
}

double inverted_generational_distance(const std::vector<Point2>& reference,
                                      const std::vector<Point2>& approx) {
  require_nonempty(reference, "reference");
  require_nonempty(approx, "approximation");
  double sum = 0.0;
  for (const Point2& y : reference) {
    const double d = nearest_distance(y, approx);
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(reference.size());
}

double additive_epsilon(const std::vector<Point2>& reference, const std::vector<Point2>& approx) {
  require_nonempty(reference, "reference");
  require_nonempty(approx, "approximation");
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point2& y : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& x : approx)
      best = std::min(best, std::max(x[0] - y[0], x[1] - y[1]));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<Point2> non_dominated(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Point2> out;
  for (const Point2& p : points) {
    bool dominated = false;
    for (const Point2& q : points)
      if (point_dominates(q, p)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(p);
  }
  return out;
}

Point2 NormalizedFronts::normalize(const Point2& p) const {
  Point2 out;
  for (int k = 0; k < 2; ++k) {
    const double range = high[k] - low[k];
    out[k] = range > 0.0 ? (p[k] - low[k]) / range : 0.0;
  }
  return out;
}

NormalizedFronts normalize_fronts(const std::vector<std::vector<Point2>>& fronts) {
  if (fronts.empty()) throw std::invalid_argument("normalize_fronts: no fronts given");
  NormalizedFronts ctx;
  ctx.fronts_raw = fronts;

  std::vector<Point2> all;
  for (const auto& f : fronts) all.insert(all.end(), f.begin(), f.end());
  require_nonempty(all, "union");
  ctx.reference_raw = non_dominated(all);

  ctx.low = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  ctx.high = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2& p : all)
    for (int k = 0; k < 2; ++k) {
      ctx.low[k] = std::min(ctx.low[k], p[k]);
      ctx.high[k] = std::max(ctx.high[k], p[k]);
    }

  for (const auto& f : fronts) {
    std::vector<Point2> nf;
    nf.reserve(f.size());
    for (const Point2& p : f) nf.push_back(ctx.normalize(p));
    ctx.fronts.push_back(std::move(nf));
  }
  for (const Point2& p : ctx.reference_raw) ctx.reference.push_back(ctx.normalize(p));
  return ctx;
}

FrontReport report_front(const NormalizedFronts& context, std::size_t front_index) {
  const auto& approx_raw = context.fronts_raw.at(front_index);
  const auto& approx = context.fronts.at(front_index);
  FrontReport r;
  r.approx_size = approx.size();
  r.reference_size = context.reference.size();

  r.cv = coverage(context.reference_raw, approx_raw);
  r.eps = additive_epsilon(context.reference, approx);
  r.gd = generational_distance(context.reference, approx);
  r.igd = inverted_generational_distance(context.reference, approx);
  r.eps_raw = additive_epsilon(context.reference_raw, approx_raw);
  r.gd_raw = generational_distance(context.reference_raw, approx_raw);
  r.igd_raw = inverted_generational_distance(context.reference_raw, approx_raw);

  for (const Point2& x : approx) r.nearest_reference.push_back(nearest_distance(x, context.reference));
  for (const Point2& y : context.reference)
    r.nearest_approximation.push_back(nearest_distance(y, approx));
  return r;
}

}  // namespace hcsp

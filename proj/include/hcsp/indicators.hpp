#pragma once

#include <array>
#include <vector>

#include "hcsp/solution.hpp"

namespace hcsp {

using Point2 = std::array<double, 2>;

inline bool point_dominates(const Point2& a, const Point2& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

// Fraction of approximation points strictly dominated by the reference set.
// Raw objective space; throws std::invalid_argument on an empty approximation.
double coverage(const std::vector<Point2>& reference, const std::vector<Point2>& approx);

// sqrt(sum of squared nearest-reference distances) / |approx|.
double generational_distance(const std::vector<Point2>& reference,
                             const std::vector<Point2>& approx);

// sqrt(sum of squared nearest-approximation distances) / |reference|.
double inverted_generational_distance(const std::vector<Point2>& reference,
                                      const std::vector<Point2>& approx);

// Additive epsilon: the infimum translation that makes the approximation
// strictly epsilon-dominate every reference point,
//   max over y in RF of min over x in A of max_k (x_k - y_k).
double additive_epsilon(const std::vector<Point2>& reference, const std::vector<Point2>& approx);

// Non-dominated filter of a point set (keeps one copy of duplicates).
std::vector<Point2> non_dominated(std::vector<Point2> points);

// Reference front and normalization context for a group of fronts: RF is the
// non-dominated union; distance-based indicators run on min-max normalized
// objectives (degenerate dimensions map to 0), coverage on raw dominance.
struct NormalizedFronts {
  std::vector<std::vector<Point2>> fronts;      // normalized inputs
  std::vector<Point2> reference;                // normalized RF
  std::vector<std::vector<Point2>> fronts_raw;  // original inputs
  std::vector<Point2> reference_raw;
  Point2 low{0.0, 0.0};
  Point2 high{0.0, 0.0};

  Point2 normalize(const Point2& p) const;
};

NormalizedFronts normalize_fronts(const std::vector<std::vector<Point2>>& fronts);

struct FrontReport {
  double cv = 0.0;
  double eps = 0.0;  // on normalized objectives
  double gd = 0.0;
  double igd = 0.0;
  double eps_raw = 0.0;
  double gd_raw = 0.0;
  double igd_raw = 0.0;
  std::size_t approx_size = 0;
  std::size_t reference_size = 0;
  std::vector<double> nearest_reference;      // per approx point, normalized
  std::vector<double> nearest_approximation;  // per reference point, normalized
};

FrontReport report_front(const NormalizedFronts& context, std::size_t front_index);

inline Point2 to_point(const ObjectivePair& p) {
  return Point2{static_cast<double>(p.cost), static_cast<double>(p.welfare)};
}

}  // namespace hcsp

#pragma once

#include <vector>

#include "fy/integrator.hpp"

namespace fy {

enum class TagRule { Left, Midpoint, Right };

/// Tagged partition a = x_0 < x_1 < ... < x_N = b with xi_r in [x_{r-1}, x_r].
struct Partition {
  std::vector<Scalar> points;
  std::vector<Scalar> tags;

  static Partition uniform(const Interval& iv, int cells, TagRule rule);
  void validate() const;
  int cells() const { return static_cast<int>(tags.size()); }
};

/// sum_r f(xi_r) (g(x_r) - g(x_{r-1})); f, g restricted to algebraic nodes.
Scalar stieltjes_sum(const KFunction& f, const KFunction& g, const Partition& part);

struct CorrespondenceReport {
  int depth = 0;
  Scalar phi_value;        // phi_depth on the binary interval IFS
  Scalar stieltjes_twice;  // 2 * midpoint-tagged dyadic Stieltjes sum
  Scalar abs_difference;
  Scalar tol;
  bool within_tol = false;
};

/// Compares the level-`depth` cell sum on the binary interval IFS against
/// twice the dyadic Stieltjes sum with 2^depth cells and midpoint tags.
/// `float_mode` runs both sides in floating point.
CorrespondenceReport interval_correspondence_check(const KFunction& f, const KFunction& g, int depth,
                                                   const Scalar& tol, bool float_mode = false);

}  // namespace fy

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "collapse/distribution.hpp"

namespace collapse {

/// Absolute tolerance for containment, collinearity and boundary tests.
inline constexpr double kGeometryTolerance = 1e-12;

/// A point of the (epsilon, delta) plane: epsilon = Q(S), delta = P(S).
struct Vertex {
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// (epsilon, delta) with 0 <= epsilon < delta <= 1.
struct CollapsePoint {
  CollapsePoint(double eps, double del);

  double epsilon;
  double delta;
};

/// Upper boundary of the mode-collapse region R(P, Q): a concave polyline
/// from (0,0) to (1,1) lying on or above the diagonal. Only the first
/// segment may be vertical and only the last may be horizontal.
class ModeCollapseRegion {
 public:
  /// Validates the boundary invariants and merges collinear vertices.
  /// Throws Error(invalid_region) on violation.
  static ModeCollapseRegion from_vertices(std::vector<Vertex> vertices);

  /// Region of indistinguishable pairs (P = Q).
  static ModeCollapseRegion diagonal();
  /// Region of disjoint pairs: (0,0), (0,1), (1,1).
  static ModeCollapseRegion full();

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::size_t segments() const noexcept { return vertices_.size() - 1; }

  friend bool operator==(const ModeCollapseRegion&, const ModeCollapseRegion&) = default;

 private:
  explicit ModeCollapseRegion(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

  std::vector<Vertex> vertices_;
};

/// Sorts atoms by likelihood ratio p/q (q = 0 first) and accumulates (Q, P).
ModeCollapseRegion region_from_pair(const DistributionPair& pair);

/// Intercept of the slope-one tangent: max over vertices of delta - epsilon.
double tv_from_region(const ModeCollapseRegion& region);

/// Boundary height at epsilon in [0, 1]. At epsilon = 0 a vertical first
/// segment counts with its top.
double boundary_delta_at(const ModeCollapseRegion& region, double epsilon);

bool has_mode_collapse(const ModeCollapseRegion& region, const CollapsePoint& point);

/// Mode augmentation of (P, Q) is mode collapse of (Q, P).
bool has_mode_augmentation(const DistributionPair& pair, const CollapsePoint& point);

/// Same test read off the (P, Q) region: the boundary reaches (1 - delta, 1 - epsilon).
bool has_mode_augmentation(const ModeCollapseRegion& region, const CollapsePoint& point);

bool region_contains(const ModeCollapseRegion& outer, const ModeCollapseRegion& inner);

/// Minimum-support pair realizing the region: one atom per boundary segment
/// with p = segment rise and q = segment run.
DistributionPair canonical_pair_from_region(const ModeCollapseRegion& region);

/// Concave upper hull of points together with (0,0) and (1,1). Points below
/// the diagonal are clipped; coordinates are clamped to [0, 1].
ModeCollapseRegion upper_hull(std::span<const Vertex> points);

/// Hausdorff distance between the two regions viewed as convex sets.
double hausdorff_distance(const ModeCollapseRegion& a, const ModeCollapseRegion& b);

}  // namespace collapse

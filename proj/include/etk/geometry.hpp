#ifndef ETK_GEOMETRY_HPP
#define ETK_GEOMETRY_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "etk/inequality.hpp"

namespace etk {

/// Weight quadruple (alpha, beta, gamma, delta).
using Weights = Eigen::Vector4d;

/// (beta, gamma, delta): affine coordinates of the simplex of weights.
inline Eigen::Vector3d to_affine(const Weights& w) { return w.tail<3>(); }
inline Weights from_affine(const Eigen::Vector3d& x) { return {1.0 - x.sum(), x[0], x[1], x[2]}; }
inline Weights weights_of(const CrossSectionPoint& p) { return p.weights(); }

/// Convex polytope inside the simplex of weights.
struct Polytope3 {
  std::vector<Weights> vertices;
  /// Outward-oriented triangles indexing `vertices`.
  std::vector<std::array<int, 3>> facets;
  /// Input spans less than three dimensions; `facets` is empty.
  bool degenerate = false;
  /// No point satisfies the constraints (outer_region only).
  bool empty = false;
  /// Names of the constraints tight at each vertex (outer_region only).
  std::vector<std::vector<std::string>> active;

  double volume() const;
  /// True when w is inside or within `tol` of every facet plane.
  bool contains(const Weights& w, double tol = 1e-9) const;
};

/// Convex hull in the affine coordinates (beta, gamma, delta). The vertices
/// returned are input points; coplanar or smaller input sets are flagged
/// degenerate and returned deduplicated without facets.
Polytope3 convex_hull_3d(std::span<const Weights> points);

/// Vertices of {w in the weight simplex : every halfspace holds}, found by
/// solving all 3x3 systems of boundary planes and keeping the feasible
/// solutions. An empty bank yields the simplex itself.
Polytope3 outer_region(const std::vector<CrossSectionHalfspace>& bank);

/// Largest alpha weight over the vertices of a polytope.
double max_alpha(const Polytope3& poly);

/// Largest alpha weight over vertices on the edge from alpha to the vertex
/// with weight index `partner` (1 beta, 2 gamma, 3 delta); other weights must
/// vanish within `tol`. Returns 0 when no vertex lies on that edge.
double max_alpha_on_edge(const Polytope3& poly, int partner, double tol = 1e-12);

}  // namespace etk

#endif  // ETK_GEOMETRY_HPP

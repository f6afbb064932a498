#pragma once

// Vertex enumeration and convex hulls for bounded polytopes, via the cone machinery.

#include <vector>

#include "conelab/lp.hpp"
#include "conelab/rational.hpp"

namespace conelab {

struct HalfSpace {
  RatVector normal;  // normal . x >= offset
  Rational offset;
};

/// Vertices of {x : h.normal . x >= h.offset, e.normal . x == e.offset}, sorted.
/// Empty if infeasible; throws Error if the set is unbounded.
std::vector<RatVector> polytope_vertices(std::size_t dim, const std::vector<HalfSpace>& ge,
                                         const std::vector<HalfSpace>& eq = {});

/// Indices of the generators that are extreme rays of cone(generators), one per
/// direction (first occurrence). Throws ConeError if the cone is not pointed.
std::vector<std::size_t> extreme_generator_indices(const std::vector<RatVector>& generators,
                                                   std::size_t dim);

/// Extreme points of conv(points), sorted and deduplicated.
std::vector<RatVector> convex_hull_vertices(const std::vector<RatVector>& points);

bool same_point_set(std::vector<RatVector> a, std::vector<RatVector> b);

struct AffineHull {
  int dimension = -1;              // -1 for an empty feasible set
  std::vector<RatVector> points;   // dimension + 1 affinely independent feasible points
  std::vector<RatVector> constant_functionals;  // w with w.x constant on the set
};

/// Affine hull of the feasible set of a program without strict rows.
/// Uses at most two optimizations per ambient dimension.
AffineHull affine_hull(const LinearProgram& p);

}  // namespace conelab

#pragma once

// Double description method: extreme rays of {x : g.x >= 0 (g in ge), e.x = 0 (e in eq)}.

#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

struct DDResult {
  std::vector<RatVector> rays;       // primitive integer, sorted, one per extreme ray
  std::vector<RatVector> lineality;  // basis of the lineality space (empty iff pointed)
};

DDResult dd_enumerate(std::size_t dim, const std::vector<RatVector>& ge,
                      const std::vector<RatVector>& eq = {});

/// Facets of cone(generators) when the cone is full-dimensional; in general
/// the extreme rays of the dual cone plus its lineality (= generators' orthogonal complement).
DDResult dd_dual(std::size_t dim, const std::vector<RatVector>& generators);

/// Sorts and removes duplicates after primitive normalization.
std::vector<RatVector> canonical_ray_list(std::vector<RatVector> rays);

}  // namespace conelab

#pragma once

// Regular polyhedral cones with synchronized V- and H-representations.
//
// A cone is stored as its extreme rays and its facet normals, both as sorted
// lists of primitive integer vectors, so two cones are equal exactly when
// their ray lists are equal. Membership is {x : f.x >= 0 for every facet f}.

#include <memory>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

class ConeError : public Error {
 public:
  enum class Kind { empty, not_pointed, not_generating, inconsistent };
  ConeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class PolyhedralCone {
 public:
  /// Generated by `generators` (redundant and repeated generators are dropped).
  static PolyhedralCone from_rays(std::size_t dim, const std::vector<RatVector>& generators);
  /// {x : f.x >= 0 for f in inequalities} (redundant inequalities are dropped).
  static PolyhedralCone from_facets(std::size_t dim, const std::vector<RatVector>& inequalities);

  std::size_t dim() const { return data_->dim; }
  const std::vector<RatVector>& rays() const { return data_->rays; }
  const std::vector<RatVector>& facets() const { return data_->facets; }

  /// Index of the ray that v is a positive multiple of, or npos.
  std::size_t ray_index(const RatVector& v) const;
  std::size_t facet_index(const RatVector& v) const;

  /// incidence()[i][j]: ray i lies on facet j.
  const std::vector<std::vector<bool>>& incidence() const { return data_->incidence; }

  friend bool operator==(const PolyhedralCone& a, const PolyhedralCone& b) {
    return a.dim() == b.dim() && a.rays() == b.rays();
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  struct Data {
    std::size_t dim = 0;
    std::vector<RatVector> rays;
    std::vector<RatVector> facets;
    std::vector<std::vector<bool>> incidence;
  };
  static PolyhedralCone make(std::size_t dim, std::vector<RatVector> rays, std::vector<RatVector> facets);

  std::shared_ptr<const Data> data_;

  friend PolyhedralCone dual_cone(const PolyhedralCone& c);
};

/// V -> H. Throws ConeError for empty, non-pointed or non-generating input.
std::vector<RatVector> dd_convert(std::size_t dim, const std::vector<RatVector>& rays);
/// H -> V. Throws ConeError for non-pointed or non-generating input.
std::vector<RatVector> dd_convert_inv(std::size_t dim, const std::vector<RatVector>& facets);

PolyhedralCone dual_cone(const PolyhedralCone& c);

bool contains(const PolyhedralCone& c, const RatVector& x);
/// Strictly positive on every facet.
bool is_interior(const PolyhedralCone& c, const RatVector& x);
/// Face(y) is the ray through y. Throws if y is not in the cone.
bool is_extremal(const PolyhedralCone& c, const RatVector& y);

struct Face {
  PolyhedralCone parent;
  std::vector<std::size_t> ray_indices;     // rays of the parent lying in the face
  std::vector<std::size_t> active_facets;   // facets of the parent vanishing on the face
  std::size_t dimension = 0;                // dimension of the face's linear span

  std::vector<RatVector> rays() const;
  bool contains_ray(std::size_t i) const;
};

/// Smallest face containing y. Throws if y is not in the cone.
Face face_of(const PolyhedralCone& c, const RatVector& y);

/// Every face, including {0} and the cone itself, ordered by (dimension, ray indices).
std::vector<Face> all_faces(const PolyhedralCone& c);

/// (C1 + C2) in the concatenated space.
PolyhedralCone ordered_direct_sum(const PolyhedralCone& a, const PolyhedralCone& b);

struct ConeComponent {
  std::vector<std::size_t> ray_indices;  // rays of the parent cone in this summand
  std::vector<RatVector> basis;          // basis of the summand's span (ambient coordinates)
  PolyhedralCone cone;                   // summand in coordinates w.r.t. basis
};

/// Finest ordered direct-sum decomposition, ordered by smallest ray index.
std::vector<ConeComponent> irreducible_components(const PolyhedralCone& c);
bool is_irreducible(const PolyhedralCone& c);
bool is_simplicial(const PolyhedralCone& c);

/// Image of a cone under an invertible matrix.
PolyhedralCone transform(const PolyhedralCone& c, const RatMatrix& m);

}  // namespace conelab

#include "conelab/cone.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "conelab/dd.hpp"
#include "conelab/linalg.hpp"
#include "conelab/polytope.hpp"

namespace conelab {

namespace {

std::vector<RatVector> tight_subset(const std::vector<RatVector>& normals, const RatVector& x) {
  std::vector<RatVector> out;
  for (const auto& f : normals)
    if (sgn(dot(f, x)) == 0) out.push_back(f);
  return out;
}

// Keeps the members of `candidates` whose tight set among `against` has rank dim - 1.
std::vector<RatVector> irredundant(std::size_t dim, const std::vector<RatVector>& candidates,
                                   const std::vector<RatVector>& against) {
  std::vector<RatVector> out;
  for (const auto& c : canonical_ray_list(candidates)) {
    if (rank(tight_subset(against, c), dim) + 1 == dim) out.push_back(c);
  }
  return out;
}

std::size_t find_direction(const std::vector<RatVector>& list, const RatVector& v) {
  if (is_zero(v)) return PolyhedralCone::npos;
  const RatVector p = primitive(v);
  auto it = std::lower_bound(list.begin(), list.end(), p, lex_less);
  if (it != list.end() && *it == p) return static_cast<std::size_t>(it - list.begin());
  return PolyhedralCone::npos;
}

}  // namespace

PolyhedralCone PolyhedralCone::make(std::size_t dim, std::vector<RatVector> rays, std::vector<RatVector> facets) {
  auto d = std::make_shared<Data>();
  d->dim = dim;
  d->rays = std::move(rays);
  d->facets = std::move(facets);
  d->incidence.assign(d->rays.size(), std::vector<bool>(d->facets.size(), false));
  for (std::size_t i = 0; i < d->rays.size(); ++i)
    for (std::size_t j = 0; j < d->facets.size(); ++j)
      d->incidence[i][j] = sgn(dot(d->rays[i], d->facets[j])) == 0;
  PolyhedralCone c;
  c.data_ = std::move(d);
  return c;
}

std::vector<RatVector> dd_convert(std::size_t dim, const std::vector<RatVector>& rays) {
  return PolyhedralCone::from_rays(dim, rays).facets();
}

std::vector<RatVector> dd_convert_inv(std::size_t dim, const std::vector<RatVector>& facets) {
  return PolyhedralCone::from_facets(dim, facets).rays();
}

PolyhedralCone PolyhedralCone::from_rays(std::size_t dim, const std::vector<RatVector>& generators) {
  if (dim == 0) throw ConeError(ConeError::Kind::empty, "cone in a zero-dimensional space");
  for (const auto& g : generators)
    if (g.size() != dim) throw DimensionError("ray of wrong width");
  if (rank(generators, dim) < dim) {
    throw ConeError(ConeError::Kind::not_generating,
                    "rays span a proper subspace (rank " + std::to_string(rank(generators, dim)) +
                        " < " + std::to_string(dim) + ")");
  }
  const auto dual = dd_dual(dim, generators);
  if (rank(dual.rays, dim) < dim) throw ConeError(ConeError::Kind::not_pointed, "cone contains a line");
  std::vector<RatVector> rays = irredundant(dim, generators, dual.rays);
  return make(dim, std::move(rays), dual.rays);
}

PolyhedralCone PolyhedralCone::from_facets(std::size_t dim, const std::vector<RatVector>& inequalities) {
  if (dim == 0) throw ConeError(ConeError::Kind::empty, "cone in a zero-dimensional space");
  for (const auto& f : inequalities)
    if (f.size() != dim) throw DimensionError("facet of wrong width");
  const auto dd = dd_enumerate(dim, inequalities);
  if (!dd.lineality.empty()) throw ConeError(ConeError::Kind::not_pointed, "cone contains a line");
  if (rank(dd.rays, dim) < dim) {
    throw ConeError(ConeError::Kind::not_generating, "inequalities cut out a lower-dimensional cone");
  }
  std::vector<RatVector> facets = irredundant(dim, inequalities, dd.rays);
  return make(dim, dd.rays, std::move(facets));
}

std::size_t PolyhedralCone::ray_index(const RatVector& v) const { return find_direction(rays(), v); }

std::size_t PolyhedralCone::facet_index(const RatVector& v) const { return find_direction(facets(), v); }

PolyhedralCone dual_cone(const PolyhedralCone& c) {
  return PolyhedralCone::make(c.dim(), c.facets(), c.rays());
}

bool contains(const PolyhedralCone& c, const RatVector& x) {
  if (x.size() != c.dim()) throw DimensionError("contains: vector of wrong width");
  return std::all_of(c.facets().begin(), c.facets().end(),
                     [&](const RatVector& f) { return sgn(dot(f, x)) >= 0; });
}

bool is_interior(const PolyhedralCone& c, const RatVector& x) {
  if (x.size() != c.dim()) throw DimensionError("is_interior: vector of wrong width");
  return std::all_of(c.facets().begin(), c.facets().end(),
                     [&](const RatVector& f) { return sgn(dot(f, x)) > 0; });
}

std::vector<RatVector> Face::rays() const {
  std::vector<RatVector> out;
  for (auto i : ray_indices) out.push_back(parent.rays()[i]);
  return out;
}

bool Face::contains_ray(std::size_t i) const {
  return std::binary_search(ray_indices.begin(), ray_indices.end(), i);
}

Face face_of(const PolyhedralCone& c, const RatVector& y) {
  if (!contains(c, y)) throw Error("face_of: vector " + to_string(y) + " is not in the cone");
  Face f{c, {}, {}, 0};
  for (std::size_t j = 0; j < c.facets().size(); ++j)
    if (sgn(dot(c.facets()[j], y)) == 0) f.active_facets.push_back(j);
  for (std::size_t i = 0; i < c.rays().size(); ++i) {
    bool in = std::all_of(f.active_facets.begin(), f.active_facets.end(),
                          [&](std::size_t j) { return c.incidence()[i][j]; });
    if (in) f.ray_indices.push_back(i);
  }
  f.dimension = rank(f.rays(), c.dim());
  return f;
}

bool is_extremal(const PolyhedralCone& c, const RatVector& y) {
  if (is_zero(y)) {
    if (y.size() != c.dim()) throw DimensionError("is_extremal: vector of wrong width");
    return false;
  }
  return face_of(c, y).dimension == 1;
}

std::vector<Face> all_faces(const PolyhedralCone& c) {
  const std::size_t n = c.rays().size();
  std::set<std::vector<bool>> sets;
  sets.insert(std::vector<bool>(n, true));
  for (std::size_t j = 0; j < c.facets().size(); ++j) {
    std::vector<bool> on(n);
    for (std::size_t i = 0; i < n; ++i) on[i] = c.incidence()[i][j];
    std::set<std::vector<bool>> next = sets;
    for (const auto& s : sets) {
      std::vector<bool> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = s[i] && on[i];
      next.insert(std::move(t));
    }
    sets = std::move(next);
  }
  std::vector<Face> faces;
  for (const auto& s : sets) {
    Face f{c, {}, {}, 0};
    for (std::size_t i = 0; i < n; ++i)
      if (s[i]) f.ray_indices.push_back(i);
    for (std::size_t j = 0; j < c.facets().size(); ++j) {
      bool all = std::all_of(f.ray_indices.begin(), f.ray_indices.end(),
                             [&](std::size_t i) { return c.incidence()[i][j]; });
      if (all) f.active_facets.push_back(j);
    }
    f.dimension = rank(f.rays(), c.dim());
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.ray_indices < b.ray_indices;
  });
  return faces;
}

PolyhedralCone ordered_direct_sum(const PolyhedralCone& a, const PolyhedralCone& b) {
  const RatVector za = zeros(a.dim()), zb = zeros(b.dim());
  std::vector<RatVector> rays;
  for (const auto& r : a.rays()) rays.push_back(concat(r, zb));
  for (const auto& r : b.rays()) rays.push_back(concat(za, r));
  return PolyhedralCone::from_rays(a.dim() + b.dim(), rays);
}

std::vector<ConeComponent> irreducible_components(const PolyhedralCone& c) {
  // Matroid components of the ray configuration: rays sharing a fundamental
  // circuit with respect to a fixed basis belong to the same summand.
  const auto& rays = c.rays();
  const std::size_t n = rays.size(), d = c.dim();
  const auto basis_idx = independent_subset(rays, d);
  std::vector<RatVector> basis_vecs;
  for (auto i : basis_idx) basis_vecs.push_back(rays[i]);
  const auto binv = *inverse(RatMatrix::from_columns(basis_vecs));

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  std::vector<bool> in_basis(n, false);
  for (auto i : basis_idx) in_basis[i] = true;
  for (std::size_t e = 0; e < n; ++e) {
    if (in_basis[e]) continue;
    const auto coeff = binv.apply(rays[e]);
    for (std::size_t k = 0; k < coeff.size(); ++k)
      if (sgn(coeff[k]) != 0) unite(e, basis_idx[k]);
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<ConeComponent> out;
  for (auto& [root, members] : groups) {
    ConeComponent comp{members, {}, PolyhedralCone{}};
    std::vector<RatVector> member_rays;
    for (auto i : members) member_rays.push_back(rays[i]);
    for (auto i : independent_subset(member_rays, d)) comp.basis.push_back(member_rays[i]);
    const auto bm = RatMatrix::from_columns(comp.basis);
    std::vector<RatVector> local;
    for (const auto& r : member_rays) local.push_back(*solve_linear(bm, r));
    comp.cone = PolyhedralCone::from_rays(comp.basis.size(), local);
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_irreducible(const PolyhedralCone& c) { return irreducible_components(c).size() == 1; }

bool is_simplicial(const PolyhedralCone& c) { return c.rays().size() == c.dim(); }

PolyhedralCone transform(const PolyhedralCone& c, const RatMatrix& m) {
  if (m.rows() != c.dim() || m.cols() != c.dim()) throw DimensionError("transform: matrix shape");
  std::vector<RatVector> rays;
  for (const auto& r : c.rays()) rays.push_back(m.apply(r));
  return PolyhedralCone::from_rays(c.dim(), rays);
}

}  // namespace conelab

#include "conelab/polytope.hpp"

#include <algorithm>

#include "conelab/cone.hpp"
#include "conelab/dd.hpp"
#include "conelab/linalg.hpp"

namespace conelab {

std::vector<RatVector> polytope_vertices(std::size_t dim, const std::vector<HalfSpace>& ge,
                                         const std::vector<HalfSpace>& eq) {
  // homogenize with t in front: (t, x), normal.x - offset t >= 0, t >= 0
  auto lift = [&](const HalfSpace& h) {
    if (h.normal.size() != dim) throw DimensionError("polytope_vertices: half-space of wrong width");
    RatVector row;
    row.reserve(dim + 1);
    row.push_back(-h.offset);
    row.insert(row.end(), h.normal.begin(), h.normal.end());
    return row;
  };
  std::vector<RatVector> g, e;
  for (const auto& h : ge) g.push_back(lift(h));
  for (const auto& h : eq) e.push_back(lift(h));
  g.push_back(unit_vector(dim + 1, 0));
  const auto dd = dd_enumerate(dim + 1, g, e);

  std::vector<RatVector> vertices;
  bool recession = !dd.lineality.empty();
  for (const auto& r : dd.rays) {
    if (sgn(r[0]) == 0) {
      recession = true;
      continue;
    }
    RatVector v(r.begin() + 1, r.end());
    vertices.push_back(scale(v, 1 / r[0]));
  }
  if (vertices.empty()) return vertices;
  if (recession) throw Error("polytope_vertices: feasible set is unbounded");
  std::sort(vertices.begin(), vertices.end(), lex_less);
  return vertices;
}

std::vector<std::size_t> extreme_generator_indices(const std::vector<RatVector>& generators,
                                                   std::size_t dim) {
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != dim) throw DimensionError("generator of wrong width");
    if (!is_zero(generators[i])) nonzero.push_back(i);
  }
  if (nonzero.empty()) return {};

  // Coordinates on the span: projection onto the pivot columns is injective there.
  std::vector<RatVector> gens;
  for (auto i : nonzero) gens.push_back(generators[i]);
  const auto pivots = rref(RatMatrix::from_rows(gens, dim)).pivots;
  const std::size_t r = pivots.size();
  std::vector<RatVector> coords;
  for (const auto& g : gens) {
    RatVector c(r);
    for (std::size_t k = 0; k < r; ++k) c[k] = g[pivots[k]];
    coords.push_back(std::move(c));
  }

  const auto facets = dd_dual(r, coords).rays;
  if (rank(facets, r) < r) throw ConeError(ConeError::Kind::not_pointed, "cone contains a line");

  std::vector<std::size_t> out;
  std::vector<RatVector> seen;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    std::vector<RatVector> tight;
    for (const auto& f : facets)
      if (sgn(dot(f, coords[k])) == 0) tight.push_back(f);
    if (rank(tight, r) + 1 != r) continue;
    RatVector p = primitive(coords[k]);
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(std::move(p));
    out.push_back(nonzero[k]);
  }
  return out;
}

std::vector<RatVector> convex_hull_vertices(const std::vector<RatVector>& points) {
  if (points.empty()) return {};
  const std::size_t dim = points.front().size();
  std::vector<RatVector> lifted;
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("convex_hull_vertices: ragged points");
    lifted.push_back(concat({1}, p));
  }
  std::vector<RatVector> out;
  for (auto i : extreme_generator_indices(lifted, dim + 1)) out.push_back(points[i]);
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_point_set(std::vector<RatVector> a, std::vector<RatVector> b) {
  std::sort(a.begin(), a.end(), lex_less);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end(), lex_less);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

AffineHull affine_hull(const LinearProgram& p) {
  if (!p.gt_rows.empty()) throw Error("affine_hull: strict rows are not supported");
  AffineHull hull;
  LinearProgram q = p;
  q.objective.reset();
  const auto first = lp_feasible(q);
  if (first.status != LPStatus::feasible) return hull;
  const RatVector& p0 = first.point;
  hull.points.push_back(p0);
  const std::size_t n = p.num_vars;

  std::vector<RatVector> dirs;
  SpanBuilder constants(n);
  for (;;) {
    const auto complement = orthogonal_complement(dirs, n);
    if (complement.size() == constants.size()) break;
    const RatVector* probe = nullptr;
    for (const auto& w : complement) {
      if (!constants.contains(w)) {
        probe = &w;
        break;
      }
    }
    const RatVector w = *probe;
    const Rational base = dot(w, p0);
    bool grew = false;
    for (int sign : {1, -1}) {
      q.objective = scale(w, Rational(sign));
      const auto opt = lp_optimize(q);
      RatVector found;
      if (opt.status == LPStatus::unbounded) {
        found = add(opt.point, opt.ray);
        if (dot(w, found) == base) found = add(found, opt.ray);
      } else if (opt.status == LPStatus::optimal && dot(w, opt.point) != base) {
        found = opt.point;
      }
      if (!found.empty() && dot(w, found) != base) {
        dirs.push_back(sub(found, p0));
        hull.points.push_back(std::move(found));
        grew = true;
        break;
      }
    }
    if (!grew) {
      constants.add(w);
      hull.constant_functionals.push_back(w);
    }
  }
  hull.dimension = static_cast<int>(dirs.size());
  return hull;
}

}  // namespace conelab

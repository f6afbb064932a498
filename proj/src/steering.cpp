#include "conelab/steering.hpp"

#include <algorithm>
#include <set>

#include "conelab/dd.hpp"
#include "conelab/linalg.hpp"
#include "conelab/polytope.hpp"

namespace conelab {

Ensemble make_ensemble(const StateSpace& b, const RatVector& target, std::vector<RatVector> parts, bool sub) {
  if (parts.empty()) throw Error("ensemble needs at least one part");
  if (target.size() != b.dim()) throw DimensionError("ensemble target of wrong width");
  RatVector sum = zeros(b.dim());
  for (const auto& p : parts) {
    if (p.size() != b.dim()) throw DimensionError("ensemble part of wrong width");
    if (!contains(b.cone(), p)) throw Error("ensemble part " + to_string(p) + " is not in the cone");
    sum = add(sum, p);
  }
  const bool ok = sub ? contains(b.cone(), conelab::sub(target, sum)) : sum == target;
  if (!ok) throw Error("ensemble parts sum to " + to_string(sum) + ", target is " + to_string(target));
  return Ensemble{std::move(parts)};
}

Chain make_chain(const StateSpace& b, const RatVector& top, std::vector<RatVector> points) {
  if (points.empty()) throw Error("chain needs at least one point");
  RatVector prev = zeros(b.dim());
  for (const auto& y : points) {
    if (y.size() != b.dim()) throw DimensionError("chain point of wrong width");
    if (!contains(b.cone(), sub(y, prev))) throw Error("chain is not increasing at " + to_string(y));
    prev = y;
  }
  if (!contains(b.cone(), sub(top, prev))) throw Error("chain exceeds " + to_string(top));
  return Chain{std::move(points)};
}

Chain partial_sums(const Ensemble& e) {
  Chain c;
  RatVector acc = zeros(e.parts.front().size());
  for (const auto& p : e.parts) {
    acc = add(acc, p);
    c.points.push_back(acc);
  }
  return c;
}

Ensemble differences(const Chain& c, const RatVector& top) {
  Ensemble e;
  RatVector prev = zeros(top.size());
  for (const auto& y : c.points) {
    e.parts.push_back(sub(y, prev));
    prev = y;
  }
  RatVector rest = sub(top, prev);
  if (!is_zero(rest)) e.parts.push_back(std::move(rest));
  return e;
}

Ensemble canonical(Ensemble e) {
  std::erase_if(e.parts, [](const RatVector& p) { return is_zero(p); });
  std::sort(e.parts.begin(), e.parts.end(), lex_less);
  return e;
}

namespace {

void require_ensemble(const BipartiteState& w, const Ensemble& e) {
  make_ensemble(w.space_b(), marginal_b(w).vector, e.parts);
}

std::vector<RatVector> split(const RatVector& flat, std::size_t parts, std::size_t width) {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < parts; ++i)
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * width),
                     flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * width));
  return out;
}

// Row placing `v` at block `block` of a vector with `blocks` blocks of width v.size().
RatVector block_row(const RatVector& v, std::size_t block, std::size_t blocks) {
  RatVector row = zeros(v.size() * blocks);
  std::copy(v.begin(), v.end(), row.begin() + static_cast<std::ptrdiff_t>(block * v.size()));
  return row;
}

LiftResult solve_lift(LinearProgram lp, std::size_t parts, std::size_t width) {
  LiftResult r;
  const auto out = lp_feasible(lp);
  r.ok = out.status == LPStatus::feasible;
  if (r.ok) r.solution = split(out.point, parts, width);
  else r.farkas = out.farkas;
  r.program = std::move(lp);
  return r;
}

}  // namespace

LiftResult lift_ensemble(const BipartiteState& w, const Ensemble& e) {
  require_ensemble(w, e);
  const StateSpace& a = w.space_a();
  const std::size_t n = a.dim(), k = e.parts.size();
  const RatMatrix& m = w.matrix();
  LinearProgram lp(n * k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& r : a.cone().rays()) lp.add_ge(block_row(r, i, k), 0);
  for (std::size_t c = 0; c < n; ++c) {
    RatVector row = zeros(n * k);
    for (std::size_t i = 0; i < k; ++i) row[i * n + c] = 1;
    lp.add_eq(std::move(row), a.unit()[c]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t q = 0; q < m.rows(); ++q) lp.add_eq(block_row(m.row(q), i, k), e.parts[i][q]);
  return solve_lift(std::move(lp), k, n);
}

LiftResult lift_chain(const BipartiteState& w, const Chain& c) {
  make_chain(w.space_b(), marginal_b(w).vector, c.points);
  const StateSpace& a = w.space_a();
  const std::size_t n = a.dim(), k = c.points.size();
  const RatMatrix& m = w.matrix();
  LinearProgram lp(n * k);
  for (const auto& r : a.cone().rays()) {
    lp.add_ge(block_row(r, 0, k), 0);
    for (std::size_t i = 1; i < k; ++i) lp.add_ge(sub(block_row(r, i, k), block_row(r, i - 1, k)), 0);
    lp.add_le(block_row(r, k - 1, k), dot(r, a.unit()));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t q = 0; q < m.rows(); ++q) lp.add_eq(block_row(m.row(q), i, k), c.points[i][q]);
  return solve_lift(std::move(lp), k, n);
}

std::vector<RatVector> observable_from_chain_lift(const std::vector<RatVector>& xs, const RatVector& unit) {
  std::vector<RatVector> out;
  RatVector prev = zeros(unit.size());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    out.push_back(sub(xs[i], prev));
    prev = xs[i];
  }
  out.push_back(sub(unit, prev));
  return out;
}

std::vector<RatVector> chain_from_observable(const std::vector<RatVector>& effects) {
  std::vector<RatVector> out;
  RatVector acc = zeros(effects.front().size());
  for (const auto& a : effects) {
    acc = add(acc, a);
    out.push_back(acc);
  }
  return out;
}

bool verify_lift(const LiftResult& r) {
  if (!r.ok) return verify_farkas(r.program, r.farkas);
  RatVector flat;
  for (const auto& v : r.solution) flat.insert(flat.end(), v.begin(), v.end());
  return flat.size() == r.program.num_vars && satisfies(r.program, flat);
}

bool verify_observable_lift(const BipartiteState& w, const Ensemble& e, const std::vector<RatVector>& effects) {
  if (effects.size() != e.parts.size()) return false;
  try {
    make_observable(w.space_a(), effects);
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 0; i < effects.size(); ++i)
    if (w.matrix().apply(effects[i]) != e.parts[i]) return false;
  return true;
}

std::vector<RatVector> image_interval(const BipartiteState& w) {
  std::vector<RatVector> images;
  for (const auto& v : effects_interval(w.space_a()).vertices) images.push_back(w.matrix().apply(v));
  return convex_hull_vertices(images);
}

std::vector<RatVector> order_interval(const StateSpace& b, const RatVector& y) {
  if (!contains(b.cone(), y)) throw Error("order_interval: " + to_string(y) + " is not in the cone");
  std::vector<HalfSpace> hs;
  for (const auto& f : b.cone().facets()) {
    hs.push_back({f, 0});
    hs.push_back({negate(f), -dot(f, y)});
  }
  return polytope_vertices(b.dim(), hs);
}

bool face_condition(const BipartiteState& w) {
  const StateSpace& b = w.space_b();
  std::vector<RatVector> images;
  for (const auto& f : w.space_a().cone().facets()) {
    RatVector img = w.matrix().apply(f);
    if (!is_zero(img)) images.push_back(std::move(img));
  }
  const Face face = face_of(b.cone(), marginal_b(w).vector);
  std::vector<RatVector> generated;
  if (!images.empty())
    for (auto i : extreme_generator_indices(images, b.dim())) generated.push_back(images[i]);
  return canonical_ray_list(generated) == canonical_ray_list(face.rays());
}

const char* to_string(SteeringStatus s) {
  switch (s) {
    case SteeringStatus::steering_up_to: return "steering_up_to";
    case SteeringStatus::not_steering: return "not_steering";
    case SteeringStatus::undecided: return "undecided";
  }
  return "?";
}

namespace {

bool ensemble_less(const Ensemble& x, const Ensemble& y) {
  if (x.parts.size() != y.parts.size()) return x.parts.size() < y.parts.size();
  return std::lexicographical_compare(x.parts.begin(), x.parts.end(), y.parts.begin(), y.parts.end(), lex_less);
}

}  // namespace

std::vector<Ensemble> extremal_ensembles(const BipartiteState& w, int k) {
  if (k < 1) throw Error("ensemble length must be positive");
  const RatVector top = marginal_b(w).vector;
  if (k == 1) return {Ensemble{{top}}};
  const StateSpace& b = w.space_b();
  const std::size_t m = b.dim(), free = static_cast<std::size_t>(k - 1);
  std::vector<HalfSpace> hs;
  for (const auto& f : b.cone().facets()) {
    RatVector all = zeros(m * free);
    for (std::size_t i = 0; i < free; ++i) {
      hs.push_back({block_row(f, i, free), 0});
      all = sub(all, block_row(f, i, free));
    }
    hs.push_back({std::move(all), -dot(f, top)});
  }
  std::vector<Ensemble> out;
  for (const auto& v : polytope_vertices(m * free, hs)) {
    Ensemble e{split(v, free, m)};
    RatVector last = top;
    for (const auto& p : e.parts) last = sub(last, p);
    e.parts.push_back(std::move(last));
    out.push_back(canonical(std::move(e)));
  }
  std::sort(out.begin(), out.end(), ensemble_less);
  out.erase(std::unique(out.begin(), out.end(), [](const Ensemble& x, const Ensemble& y) { return x.parts == y.parts; }),
            out.end());
  return out;
}

SteeringVerdict decide_steering(const BipartiteState& w, const SteeringOptions& options) {
  if (options.depth < 2) throw Error("steering depth must be at least 2");
  SteeringVerdict v;
  std::set<std::vector<RatVector>> done;
  for (int k = 2; k <= options.depth; ++k) {
    const auto ensembles = extremal_ensembles(w, k);
    if (options.max_vertices != 0 && ensembles.size() > options.max_vertices) {
      v.status = SteeringStatus::undecided;
      return v;
    }
    for (const auto& e : ensembles) {
      if (!done.insert(e.parts).second) continue;
      auto lift = lift_ensemble(w, e);
      if (!lift.ok) {
        v.status = SteeringStatus::not_steering;
        v.counterexample = e;
        v.failed_lift = std::move(lift);
        return v;
      }
      v.lifted.push_back({e, std::move(lift.solution)});
    }
    v.depth = k;
  }
  v.status = SteeringStatus::steering_up_to;
  return v;
}

namespace {

// Right inverse on the column span: returns X with X (basis columns) = images,
// extended by zero on the orthogonal complement.
RatMatrix extend_linear(const std::vector<RatVector>& basis, const std::vector<RatVector>& images,
                        std::size_t in_dim, std::size_t out_dim) {
  if (basis.empty()) return RatMatrix(out_dim, in_dim);
  const RatMatrix bm = RatMatrix::from_columns(basis, in_dim);
  const RatMatrix sm = RatMatrix::from_columns(images, out_dim);
  const RatMatrix bt = bm.transpose();
  return sm * *inverse(bt * bm) * bt;
}

}  // namespace

SectionResult affine_section_search(const BipartiteState& w, const SectionOptions& options) {
  SectionResult res;
  const StateSpace& a = w.space_a();
  const StateSpace& b = w.space_b();
  const std::size_t na = a.dim(), nb = b.dim();
  const RatMatrix& m = w.matrix();
  res.interval_vertices = order_interval(b, marginal_b(w).vector);
  const auto& verts = res.interval_vertices;

  // Coordinates of every vertex against a basis drawn from the vertices.
  std::vector<RatVector> coords_src;
  for (const auto& y : verts) coords_src.push_back(options.fix_origin ? y : concat({1}, y));
  const std::size_t width = options.fix_origin ? nb : nb + 1;
  const auto basis_idx = independent_subset(coords_src, width);
  const std::size_t d = basis_idx.size();
  std::vector<RatVector> basis;
  for (auto i : basis_idx) basis.push_back(coords_src[i]);
  std::vector<RatVector> coeffs;
  if (d > 0) {
    const RatMatrix bm = RatMatrix::from_columns(basis, width);
    for (const auto& c : coords_src) coeffs.push_back(*solve_linear(bm, c));
  } else {
    coeffs.assign(verts.size(), {});
  }

  // Unknowns: sigma at each basis vertex, blocks of width na.
  LinearProgram lp(d * na);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    auto image_row = [&](const RatVector& functional) {
      RatVector row = zeros(d * na);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t t = 0; t < na; ++t) row[j * na + t] = coeffs[v][j] * functional[t];
      return row;
    };
    for (std::size_t q = 0; q < nb; ++q) lp.add_eq(image_row(m.row(q)), verts[v][q]);
    for (const auto& r : a.cone().rays()) {
      RatVector row = image_row(r);
      lp.add_le(row, dot(r, a.unit()));
      lp.add_ge(std::move(row), 0);
    }
  }
  const auto out = lp_feasible(lp);
  res.program = lp;
  if (out.status != LPStatus::feasible) {
    res.farkas = out.farkas;
    return res;
  }
  res.exists = true;
  res.solution_dimension = affine_hull(lp).dimension;
  const auto values = split(out.point, d, na);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    RatVector img = zeros(na);
    for (std::size_t j = 0; j < d; ++j) img = add(img, scale(values[j], coeffs[v][j]));
    res.images.push_back(std::move(img));
  }

  std::vector<RatVector> base_pts;
  for (auto i : basis_idx) base_pts.push_back(verts[i]);
  if (options.fix_origin) {
    res.linear = extend_linear(base_pts, values, nb, na);
    res.offset = zeros(na);
  } else {
    std::vector<RatVector> dirs, dimg;
    for (std::size_t j = 1; j < d; ++j) {
      dirs.push_back(sub(base_pts[j], base_pts[0]));
      dimg.push_back(sub(values[j], values[0]));
    }
    res.linear = extend_linear(dirs, dimg, nb, na);
    res.offset = sub(values[0], res.linear.apply(base_pts[0]));
  }
  return res;
}

bool verify_section(const BipartiteState& w, const SectionResult& s) {
  if (!s.exists) return verify_farkas(s.program, s.farkas);
  if (s.images.size() != s.interval_vertices.size()) return false;
  for (std::size_t v = 0; v < s.images.size(); ++v) {
    const auto& y = s.interval_vertices[v];
    const auto& x = s.images[v];
    if (w.matrix().apply(x) != y) return false;
    if (!is_effect(w.space_a(), x)) return false;
    if (add(s.linear.apply(y), s.offset) != x) return false;
  }
  return true;
}

BisteeringVerdict bisteering(const BipartiteState& w, const SteeringOptions& options) {
  return BisteeringVerdict{decide_steering(w.transposed(), options), decide_steering(w, options)};
}

bool injective_steering_implies_iso(const BipartiteState& w, const SteeringOptions& options) {
  if (!is_interior(w.space_b().cone(), marginal_b(w).vector)) throw Error("B-marginal is not interior");
  if (rank(w.matrix()) != w.space_a().dim()) throw Error("state map is not injective");
  if (decide_steering(w, options).status != SteeringStatus::steering_up_to) throw Error("state is not steering");
  return is_isomorphism_state(w).has_value();
}

SteeringProductApprox steering_product_inner(const StateSpace& a, const StateSpace& b,
                                             const std::vector<BipartiteState>& generators,
                                             const SteeringOptions& options) {
  SteeringProductApprox out;
  std::vector<RatVector> rays;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& w = generators[g];
    if (w.space_a().dim() != a.dim() || w.space_b().dim() != b.dim())
      throw DimensionError("steering generator over the wrong spaces");
    if (decide_steering(w, options).status != SteeringStatus::steering_up_to)
      throw Error("generator " + std::to_string(g) + " is not steering");
    rays.push_back(tensor_vector(w.matrix()));
    out.provenance.push_back("generator " + std::to_string(g));
  }
  out.generator_count = generators.size();
  for (std::size_t i = 0; i < a.cone().rays().size(); ++i)
    for (std::size_t j = 0; j < b.cone().rays().size(); ++j) {
      rays.push_back(kron(a.cone().rays()[i], b.cone().rays()[j]));
      out.provenance.push_back("product " + std::to_string(i) + " " + std::to_string(j));
      ++out.product_count;
    }
  out.cone = PolyhedralCone::from_rays(a.dim() * b.dim(), rays);
  return out;
}

ScanReport universal_self_steering_scan(const StateSpace& a, const std::vector<RatVector>& grid,
                                        const SteeringOptions& options) {
  ScanReport rep;
  rep.homogeneous = is_homogeneous(a).status;
  rep.weakly_self_dual = is_weakly_self_dual(a).has_value();
  for (const auto& alpha : grid) {
    ScanEntry e{alpha, "none", false, std::nullopt};
    const bool interior = is_interior(a.cone(), alpha);
    if (interior) {
      e.state = purify(a, alpha);
      if (e.state) e.method = "purify";
    } else if (is_extremal(a.cone(), alpha)) {
      e.state = BipartiteState(a, a, product_matrix(alpha, alpha));
      e.method = "product";
    }
    if (e.state) e.steered = decide_steering(*e.state, options).status == SteeringStatus::steering_up_to;
    if (interior) {
      ++rep.interior_total;
      rep.interior_steered += e.steered;
    }
    rep.entries.push_back(std::move(e));
  }
  rep.all_steered = rep.interior_steered == rep.interior_total;
  rep.consistent = rep.all_steered == (rep.homogeneous == Homogeneity::yes && rep.weakly_self_dual);
  return rep;
}

std::vector<RatVector> state_grid(const StateSpace& a, int denominator) {
  if (denominator < 1) throw Error("grid denominator must be positive");
  const auto pure = a.pure_states();
  const std::size_t m = pure.size();
  std::set<RatVector, decltype(&lex_less)> points(&lex_less);
  std::vector<int> weights(m, 0);
  // enumerate compositions of `denominator` into m parts
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == m) {
      weights[i] = left;
      RatVector p = zeros(a.dim());
      for (std::size_t k = 0; k < m; ++k) {
        Rational w(weights[k], denominator);
        w.canonicalize();
        p = add(p, scale(pure[k], w));
      }
      points.insert(std::move(p));
      return;
    }
    for (int w = left; w >= 0; --w) {
      weights[i] = w;
      self(self, i + 1, left - w);
    }
  };
  rec(rec, 0, denominator);
  return {points.begin(), points.end()};
}

}  // namespace conelab

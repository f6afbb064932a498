#include "conelab/composite.hpp"

#include <algorithm>
#include <set>

#include "conelab/linalg.hpp"
#include "conelab/lp.hpp"
#include "conelab/polytope.hpp"

namespace conelab {

bool is_positive_map(const RatMatrix& m, const PolyhedralCone& domain, const PolyhedralCone& codomain) {
  if (m.rows() != codomain.dim() || m.cols() != domain.dim()) throw DimensionError("map of wrong shape");
  for (const auto& r : domain.rays()) {
    const RatVector img = m.apply(r);
    for (const auto& f : codomain.facets())
      if (sgn(dot(f, img)) < 0) return false;
  }
  return true;
}

BipartiteState::BipartiteState(StateSpace a, StateSpace b, RatMatrix matrix)
    : a_(std::move(a)), b_(std::move(b)), w_(std::move(matrix)) {
  if (w_.rows() != b_.dim() || w_.cols() != a_.dim()) {
    throw DimensionError("state matrix must be " + std::to_string(b_.dim()) + "x" + std::to_string(a_.dim()));
  }
  if (!is_positive_map(w_, dual_cone(a_.cone()), b_.cone())) {
    throw Error("state matrix is negative on some pair of product effects");
  }
}

Rational BipartiteState::value(const RatVector& effect_a, const RatVector& effect_b) const {
  return dot(effect_b, w_.apply(effect_a));
}

BipartiteState BipartiteState::transposed() const { return BipartiteState(b_, a_, w_.transpose()); }

RatVector kron(const RatVector& x, const RatVector& y) {
  RatVector out;
  out.reserve(x.size() * y.size());
  for (const auto& xi : x)
    for (const auto& yj : y) out.push_back(xi * yj);
  return out;
}

RatVector tensor_vector(const RatMatrix& w) {
  RatVector v;
  v.reserve(w.rows() * w.cols());
  for (std::size_t i = 0; i < w.cols(); ++i)
    for (std::size_t j = 0; j < w.rows(); ++j) v.push_back(w(j, i));
  return v;
}

RatMatrix matrix_from_tensor(const RatVector& v, std::size_t n_a, std::size_t n_b) {
  if (v.size() != n_a * n_b) throw DimensionError("tensor of wrong width");
  RatMatrix w(n_b, n_a);
  for (std::size_t i = 0; i < n_a; ++i)
    for (std::size_t j = 0; j < n_b; ++j) w(j, i) = v[i * n_b + j];
  return w;
}

RatMatrix product_matrix(const RatVector& alpha, const RatVector& beta) {
  RatMatrix w(beta.size(), alpha.size());
  for (std::size_t j = 0; j < beta.size(); ++j)
    for (std::size_t i = 0; i < alpha.size(); ++i) w(j, i) = beta[j] * alpha[i];
  return w;
}

const char* to_string(TensorKind k) {
  switch (k) {
    case TensorKind::min: return "min";
    case TensorKind::max: return "max";
    case TensorKind::custom: return "custom";
  }
  return "?";
}

TensorSpace max_tensor(const StateSpace& a, const StateSpace& b) {
  std::vector<RatVector> facets;
  for (const auto& fa : a.cone().facets())
    for (const auto& fb : b.cone().facets()) facets.push_back(kron(fa, fb));
  const std::size_t n = a.dim() * b.dim();
  return TensorSpace{a, b, TensorKind::max,
                     StateSpace(PolyhedralCone::from_facets(n, facets), kron(a.unit(), b.unit()))};
}

TensorSpace min_tensor(const StateSpace& a, const StateSpace& b) {
  std::vector<RatVector> rays;
  for (const auto& ra : a.cone().rays())
    for (const auto& rb : b.cone().rays()) rays.push_back(kron(ra, rb));
  const std::size_t n = a.dim() * b.dim();
  return TensorSpace{a, b, TensorKind::min,
                     StateSpace(PolyhedralCone::from_rays(n, rays), kron(a.unit(), b.unit()))};
}

TensorSpace custom_tensor(const StateSpace& a, const StateSpace& b, const std::vector<RatVector>& rays) {
  const auto mx = max_tensor(a, b);
  const auto mn = min_tensor(a, b);
  const std::size_t n = a.dim() * b.dim();
  for (const auto& r : rays) {
    if (r.size() != n) throw DimensionError("custom_tensor: ray of wrong width");
    if (!contains(mx.space.cone(), r)) throw Error("custom_tensor: " + to_string(r) + " is outside the max tensor cone");
  }
  const auto cone = PolyhedralCone::from_rays(n, rays);
  for (const auto& r : mn.space.cone().rays())
    if (!contains(cone, r)) throw Error("custom_tensor: product state " + to_string(r) + " is not in the cone");
  return TensorSpace{a, b, TensorKind::custom, StateSpace(cone, kron(a.unit(), b.unit()))};
}

State marginal_a(const BipartiteState& w) {
  return make_state(w.space_a(), w.matrix().transpose().apply(w.space_b().unit()));
}

State marginal_b(const BipartiteState& w) { return make_state(w.space_b(), w.matrix().apply(w.space_a().unit())); }

std::optional<State> conditional_state(const BipartiteState& w, const RatVector& effect) {
  if (!is_effect(w.space_a(), effect)) throw Error("conditional_state: " + to_string(effect) + " is not an effect");
  const RatVector img = w.matrix().apply(effect);
  const Rational norm = dot(w.space_b().unit(), img);
  if (sgn(norm) == 0) return std::nullopt;
  return make_state(w.space_b(), scale(img, 1 / norm));
}

std::optional<OrderIsoWitness> is_isomorphism_state(const BipartiteState& w) {
  const PolyhedralCone source = dual_cone(w.space_a().cone());
  const PolyhedralCone& target = w.space_b().cone();
  if (source.dim() != target.dim() || source.rays().size() != target.rays().size()) return std::nullopt;
  OrderIsoWitness wit;
  wit.matrix = w.matrix();
  for (const auto& s : source.rays()) {
    const RatVector img = w.matrix().apply(s);
    const std::size_t j = target.ray_index(img);
    if (j == PolyhedralCone::npos) return std::nullopt;
    Rational sc;
    positive_multiple(target.rays()[j], img, &sc);
    wit.ray_bijection.push_back(j);
    wit.scales.push_back(sc);
  }
  if (!verify_order_iso(source, target, wit)) return std::nullopt;
  return wit;
}

namespace {

// {psi : psi and m - psi positive} over the flattened entries of psi.
LinearProgram sandwich_program(const RatMatrix& m, const PolyhedralCone& domain, const PolyhedralCone& codomain) {
  const std::size_t rows = m.rows(), cols = m.cols();
  LinearProgram lp(rows * cols);
  for (const auto& r : domain.rays()) {
    const RatVector img = m.apply(r);
    for (const auto& f : codomain.facets()) {
      RatVector row(rows * cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) row[i * cols + j] = f[i] * r[j];
      lp.add_le(row, dot(f, img));
      lp.add_ge(std::move(row), 0);
    }
  }
  return lp;
}

RatMatrix unflatten(const RatVector& v, std::size_t rows, std::size_t cols) {
  RatMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = v[i * cols + j];
  return out;
}

}  // namespace

ExtremalityResult map_is_extremal(const RatMatrix& m, const PolyhedralCone& domain, const PolyhedralCone& codomain) {
  const auto& flat = m.data();
  const auto k_it = std::find_if(flat.begin(), flat.end(), [](const Rational& v) { return sgn(v) != 0; });
  if (k_it == flat.end()) throw Error("map_is_extremal: zero map");
  if (!is_positive_map(m, domain, codomain)) throw Error("map_is_extremal: map is not positive");
  const std::size_t k = static_cast<std::size_t>(k_it - flat.begin());

  // psi is a multiple of m iff psi_j m_k - psi_k m_j = 0 for every j.
  LinearProgram lp = sandwich_program(m, domain, codomain);
  for (std::size_t j = 0; j < flat.size(); ++j) {
    if (j == k) continue;
    RatVector w = unit_vector(flat.size(), j);
    w[k] = -flat[j] / flat[k];
    for (int sign : {1, -1}) {
      lp.objective = scale(w, Rational(sign));
      const auto out = lp_optimize(lp);
      if (out.status == LPStatus::optimal && sgn(out.value) != 0) {
        return ExtremalityResult{false, unflatten(out.point, m.rows(), m.cols())};
      }
    }
  }
  return ExtremalityResult{true, std::nullopt};
}

bool verify_decomposition(const RatMatrix& m, const RatMatrix& psi, const PolyhedralCone& domain,
                          const PolyhedralCone& codomain) {
  if (psi.rows() != m.rows() || psi.cols() != m.cols()) return false;
  if (!is_positive_map(psi, domain, codomain) || !is_positive_map(m - psi, domain, codomain)) return false;
  // psi must not lie on the line through m
  RatMatrix both(2, m.data().size());
  for (std::size_t j = 0; j < m.data().size(); ++j) {
    both(0, j) = m.data()[j];
    both(1, j) = psi.data()[j];
  }
  return rank(both) == 2;
}

ExtremalityResult is_pure_in_max(const BipartiteState& w) {
  return map_is_extremal(w.matrix(), dual_cone(w.space_a().cone()), w.space_b().cone());
}

namespace {

std::vector<std::vector<std::size_t>> candidate_spans(const PolyhedralCone& domain, std::size_t r,
                                                      FactorTarget target) {
  std::vector<std::vector<std::size_t>> out;
  if (target == FactorTarget::face) {
    for (const auto& f : all_faces(domain))
      if (f.dimension == r) out.push_back(f.ray_indices);
    return out;
  }
  // every r-subset of independent rays, first occurrence of each span
  const std::size_t n = domain.rays().size();
  std::set<std::vector<Rational>> seen;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<std::size_t> idx;
    std::vector<RatVector> vecs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) {
        idx.push_back(i);
        vecs.push_back(domain.rays()[i]);
      }
    if (rank(vecs, domain.dim()) != r) continue;
    const auto key = rref(RatMatrix::from_rows(vecs, domain.dim())).reduced.data();
    if (seen.insert(key).second) out.push_back(idx);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

std::optional<Factorization> factors_isomorphically_through(const RatMatrix& m, const PolyhedralCone& domain,
                                                            const PolyhedralCone& codomain, FactorTarget target) {
  if (!is_positive_map(m, domain, codomain)) throw Error("factors_isomorphically_through: map is not positive");
  const std::size_t n = domain.dim();
  const std::size_t r = rank(m);
  if (r == 0) return std::nullopt;
  const auto kernel = nullspace(m);

  RatVector total = zeros(n);
  for (const auto& ray : domain.rays()) total = add(total, ray);
  const Face goal = face_of(codomain, m.apply(total));
  if (goal.dimension != r) return std::nullopt;

  for (const auto& idx : candidate_spans(domain, r, target)) {
    std::vector<RatVector> span_basis;
    std::vector<RatVector> rays_in;
    for (auto i : idx) rays_in.push_back(domain.rays()[i]);
    for (auto i : independent_subset(rays_in, n)) span_basis.push_back(rays_in[i]);
    if (span_basis.size() != r) continue;

    // p = [F | 0] [F | K]^-1 projects onto span F along ker m
    std::vector<RatVector> cols = span_basis;
    cols.insert(cols.end(), kernel.begin(), kernel.end());
    const auto inv = inverse(RatMatrix::from_columns(cols, n));
    if (!inv) continue;
    std::vector<RatVector> kept = span_basis;
    for (std::size_t i = 0; i < kernel.size(); ++i) kept.push_back(zeros(n));
    const RatMatrix p = RatMatrix::from_columns(kept, n) * *inv;

    std::vector<RatVector> images;
    bool positive = true;
    for (const auto& ray : domain.rays()) {
      RatVector img = p.apply(ray);
      if (!contains(domain, img)) {
        positive = false;
        break;
      }
      images.push_back(std::move(img));
    }
    if (!positive) continue;

    Factorization fac{idx, p, {}, goal.ray_indices};
    for (auto i : extreme_generator_indices(images, n)) fac.image_rays.push_back(primitive(images[i]));
    std::sort(fac.image_rays.begin(), fac.image_rays.end(), lex_less);
    if (fac.image_rays.size() != goal.ray_indices.size()) continue;

    std::set<std::size_t> hit;
    bool iso = true;
    for (const auto& v : fac.image_rays) {
      const std::size_t j = codomain.ray_index(m.apply(v));
      if (j == PolyhedralCone::npos || !goal.contains_ray(j) || !hit.insert(j).second) {
        iso = false;
        break;
      }
    }
    if (iso) return fac;
  }
  return std::nullopt;
}

std::optional<BipartiteState> purify(const StateSpace& a, const RatVector& alpha) {
  if (alpha.size() != a.dim()) throw DimensionError("purify: state of wrong width");
  if (!is_interior(a.cone(), alpha)) throw Error("purify: " + to_string(alpha) + " is not interior");
  if (dot(a.unit(), alpha) != 1) throw Error("purify: " + to_string(alpha) + " is not normalized");
  const auto eta = is_weakly_self_dual(a);
  if (!eta) return std::nullopt;
  const RatVector center = eta->matrix.apply(a.unit());
  const auto tau = transport_automorphism(a, center, alpha);
  if (!tau) return std::nullopt;
  return BipartiteState(a, a, tau->matrix * eta->matrix);
}

}  // namespace conelab

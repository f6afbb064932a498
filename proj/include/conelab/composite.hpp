#pragma once

// Bipartite states as positive maps A* -> B, tensor product cones, purity of
// maps, factorization through faces and purification.
//
// A state is stored as the n_B x n_A matrix W of its map, so that
// omega(a, b) = b . (W a). As a tensor the same state is the vector with
// entry i * n_B + j equal to W(j, i).

#include <optional>
#include <string>
#include <vector>

#include "conelab/space.hpp"

namespace conelab {

class BipartiteState {
 public:
  BipartiteState() = default;
  /// Throws Error unless b . W a >= 0 for every facet a of A and facet b of B.
  BipartiteState(StateSpace a, StateSpace b, RatMatrix matrix);

  const StateSpace& space_a() const { return a_; }
  const StateSpace& space_b() const { return b_; }
  const RatMatrix& matrix() const { return w_; }

  Rational value(const RatVector& effect_a, const RatVector& effect_b) const;
  Rational normalization() const { return value(a_.unit(), b_.unit()); }

  /// The same state with the roles of A and B exchanged.
  BipartiteState transposed() const;

 private:
  StateSpace a_, b_;
  RatMatrix w_;
};

/// Positivity of a map between cones: f . (M r) >= 0 for rays r and facets f.
bool is_positive_map(const RatMatrix& m, const PolyhedralCone& domain, const PolyhedralCone& codomain);

RatVector kron(const RatVector& x, const RatVector& y);
RatVector tensor_vector(const RatMatrix& w);
RatMatrix matrix_from_tensor(const RatVector& v, std::size_t n_a, std::size_t n_b);
/// Product state alpha (x) beta as a map: W = beta alpha^T.
RatMatrix product_matrix(const RatVector& alpha, const RatVector& beta);

enum class TensorKind { min, max, custom };

const char* to_string(TensorKind k);

struct TensorSpace {
  StateSpace factor_a;
  StateSpace factor_b;
  TensorKind kind;
  StateSpace space;  // over Q^(n_A n_B), unit u_A (x) u_B
};

TensorSpace max_tensor(const StateSpace& a, const StateSpace& b);
TensorSpace min_tensor(const StateSpace& a, const StateSpace& b);
/// Cone generated by `rays`. Throws Error unless it lies between the min and max cones.
TensorSpace custom_tensor(const StateSpace& a, const StateSpace& b, const std::vector<RatVector>& rays);

State marginal_a(const BipartiteState& w);
State marginal_b(const BipartiteState& w);

/// Normalized W a, or nullopt when W a = 0. Throws Error if a is not an effect on A.
std::optional<State> conditional_state(const BipartiteState& w, const RatVector& effect);

/// W maps the dual cone of A onto the cone of B.
std::optional<OrderIsoWitness> is_isomorphism_state(const BipartiteState& w);

struct ExtremalityResult {
  bool extremal = false;
  /// Not extremal: psi with psi and m - psi positive and psi not a multiple of m.
  std::optional<RatMatrix> psi;
};

/// Whether m spans an extreme ray of the cone of positive maps domain -> codomain.
/// Throws Error if m is zero or not positive.
ExtremalityResult map_is_extremal(const RatMatrix& m, const PolyhedralCone& domain, const PolyhedralCone& codomain);

/// psi and m - psi are positive and psi is not a multiple of m.
bool verify_decomposition(const RatMatrix& m, const RatMatrix& psi, const PolyhedralCone& domain,
                          const PolyhedralCone& codomain);

/// Extremality of the state's map in the maximal tensor product.
ExtremalityResult is_pure_in_max(const BipartiteState& w);

enum class FactorTarget {
  face,      // subspaces spanned by faces of the domain cone
  ray_span,  // subspaces spanned by any subset of domain rays
};

struct Factorization {
  std::vector<std::size_t> ray_indices;  // domain rays spanning the subspace
  RatMatrix idempotent;                  // positive projection onto that span along ker m
  std::vector<RatVector> image_rays;     // extreme rays of idempotent(domain cone)
  std::vector<std::size_t> target_face;  // codomain rays of Face(m(sum of domain rays))
};

/// m = m o p for a positive idempotent p whose image cone m maps isomorphically
/// onto a face of the codomain.
std::optional<Factorization> factors_isomorphically_through(const RatMatrix& m, const PolyhedralCone& domain,
                                                            const PolyhedralCone& codomain,
                                                            FactorTarget target = FactorTarget::face);

/// An isomorphism state in A (x)max A with B-marginal alpha, built as tau o eta.
/// Throws Error unless alpha is interior and normalized.
std::optional<BipartiteState> purify(const StateSpace& a, const RatVector& alpha);

}  // namespace conelab

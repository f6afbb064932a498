#pragma once

// Abstract state spaces: a regular cone with a strictly positive order unit.
// Also houses the order-isomorphism search used for weak self-duality,
// homogeneity and transport of interior states.

#include <optional>
#include <utility>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/polytope.hpp"

namespace conelab {

class StateSpace {
 public:
  StateSpace() = default;
  /// Throws Error unless unit . r > 0 for every extreme ray r.
  StateSpace(PolyhedralCone cone, RatVector unit);

  const PolyhedralCone& cone() const { return cone_; }
  const RatVector& unit() const { return unit_; }
  std::size_t dim() const { return cone_.dim(); }

  /// Extreme rays rescaled to unit value 1, in ray order.
  std::vector<RatVector> pure_states() const;
  /// Average of the pure states.
  RatVector barycenter() const;

 private:
  PolyhedralCone cone_;
  RatVector unit_;
};

struct State {
  RatVector vector;
  Rational normalization;
  bool normalized() const { return normalization == 1; }
};

struct Effect {
  RatVector functional;
};

struct Observable {
  std::vector<Effect> effects;
};

/// Throws Error if v is not in the cone.
State make_state(const StateSpace& a, RatVector v);
/// Throws Error unless 0 <= f <= unit in the dual order.
Effect make_effect(const StateSpace& a, RatVector f);
/// Throws Error unless every entry is an effect and they sum to the unit.
Observable make_observable(const StateSpace& a, const std::vector<RatVector>& effects);

bool is_effect(const StateSpace& a, const RatVector& f);

struct EffectInterval {
  std::vector<HalfSpace> constraints;  // r.f >= 0 and r.(u - f) >= 0 for rays r
  std::vector<RatVector> vertices;
};

EffectInterval effects_interval(const StateSpace& a);

/// The dual cone with `alpha0` as its unit. Throws Error unless alpha0 is interior.
StateSpace diamond_dual(const StateSpace& a, const RatVector& alpha0);

struct OrderIsoWitness {
  RatMatrix matrix;
  std::vector<std::size_t> ray_bijection;  // source ray i -> target ray ray_bijection[i]
  std::vector<Rational> scales;            // matrix * source_i = scales[i] * target_{bijection[i]}
};

bool verify_order_iso(const PolyhedralCone& source, const PolyhedralCone& target, const OrderIsoWitness& w);

struct IsoSearchOptions {
  /// Restrict to maps sending first to second.
  std::optional<std::pair<RatVector, RatVector>> transport;
  std::size_t max_results = 1;  // 0 = all
  std::size_t max_nodes = 0;    // 0 = no cutoff
};

struct IsoSearchResult {
  std::vector<OrderIsoWitness> witnesses;
  bool exhausted = true;  // false if stopped by max_results or max_nodes
  std::size_t nodes = 0;
};

/// Linear maps carrying extreme rays of `source` onto extreme rays of `target`.
/// Permutations are tried in lexicographic order. Without a transport
/// constraint a witness is scaled so that the first pivot ray has scale 1.
IsoSearchResult enumerate_order_isos(const PolyhedralCone& source, const PolyhedralCone& target,
                                     const IsoSearchOptions& options = {});

std::optional<OrderIsoWitness> order_iso_search(const PolyhedralCone& source, const PolyhedralCone& target);

/// Every ray-permuting automorphism, one per permutation (up to positive scaling
/// when the cone is irreducible).
std::vector<OrderIsoWitness> automorphisms(const PolyhedralCone& c);

/// Order isomorphism from the dual cone onto the cone.
std::optional<OrderIsoWitness> is_weakly_self_dual(const StateSpace& a);

/// Automorphism tau of the cone with tau(alpha) = beta. Throws Error unless both are interior.
std::optional<OrderIsoWitness> transport_automorphism(const StateSpace& a, const RatVector& alpha,
                                                      const RatVector& beta);

enum class Homogeneity { yes, no, unknown };

const char* to_string(Homogeneity h);

struct HomogeneityVerdict {
  Homogeneity status = Homogeneity::unknown;
  RatVector alpha;                        // interior pair tested
  RatVector beta;
  std::optional<OrderIsoWitness> transport;  // yes: tau(alpha) = beta
};

/// Simplicial cones are homogeneous (diagonal scalings). For any other cone the
/// verdict is backed by an interior pair that no automorphism connects.
HomogeneityVerdict is_homogeneous(const StateSpace& a);

}  // namespace conelab

#pragma once

// Ensemble steering: lifting ensembles and chains through a state's map,
// deciding steering up to a fixed ensemble length, affine sections, and the
// inner approximation of the steering product.

#include <optional>
#include <string>
#include <vector>

#include "conelab/composite.hpp"
#include "conelab/lp.hpp"

namespace conelab {

struct Ensemble {
  std::vector<RatVector> parts;
};

struct Chain {
  std::vector<RatVector> points;
};

/// Throws Error unless every part is in the cone and the parts sum to `target`
/// (or to something below it when `sub` is set).
Ensemble make_ensemble(const StateSpace& b, const RatVector& target, std::vector<RatVector> parts, bool sub = false);
/// Throws Error unless 0 <= y_1 <= ... <= y_k <= top in the cone order.
Chain make_chain(const StateSpace& b, const RatVector& top, std::vector<RatVector> points);

/// Partial sums y_j = beta_1 + ... + beta_j.
Chain partial_sums(const Ensemble& e);
/// Successive differences, plus top - y_k when that is nonzero.
Ensemble differences(const Chain& c, const RatVector& top);

/// Drops zero parts and sorts the rest, so permuted ensembles compare equal.
Ensemble canonical(Ensemble e);

struct LiftResult {
  bool ok = false;
  std::vector<RatVector> solution;  // effects a_i, or chain points x_i
  LinearProgram program;
  FarkasCertificate farkas;
};

/// Effects a_i >= 0 with sum u_A and W a_i = beta_i.
LiftResult lift_ensemble(const BipartiteState& w, const Ensemble& e);
/// 0 <= x_1 <= ... <= x_k <= u_A with W x_i = y_i.
LiftResult lift_chain(const BipartiteState& w, const Chain& c);

/// Observable from a chain lift whose last point maps to the B-marginal:
/// x_1, x_2 - x_1, ..., u_A - x_{k-1}.
std::vector<RatVector> observable_from_chain_lift(const std::vector<RatVector>& xs, const RatVector& unit);
/// x_j = a_1 + ... + a_j.
std::vector<RatVector> chain_from_observable(const std::vector<RatVector>& effects);

/// Re-checks a lift by substitution (ok) or by its Farkas certificate (not ok).
bool verify_lift(const LiftResult& r);
/// The effects form an observable on A and W a_i = beta_i.
bool verify_observable_lift(const BipartiteState& w, const Ensemble& e, const std::vector<RatVector>& effects);

/// Extreme points of W([0, u_A]).
std::vector<RatVector> image_interval(const BipartiteState& w);
/// Vertices of the interval [0, y] in the cone of B.
std::vector<RatVector> order_interval(const StateSpace& b, const RatVector& y);

/// The cone generated by W applied to the dual cone of A equals Face(omega^B).
bool face_condition(const BipartiteState& w);

enum class SteeringStatus { steering_up_to, not_steering, undecided };

const char* to_string(SteeringStatus s);

struct LiftedEnsemble {
  Ensemble ensemble;
  std::vector<RatVector> effects;
};

struct SteeringVerdict {
  SteeringStatus status = SteeringStatus::undecided;
  int depth = 0;  // largest ensemble length fully checked
  std::optional<Ensemble> counterexample;
  std::optional<LiftResult> failed_lift;
  std::vector<LiftedEnsemble> lifted;
};

struct SteeringOptions {
  int depth = 3;
  std::size_t max_vertices = 0;  // per length; 0 = no cutoff
};

/// Lifts every vertex of each ensemble polytope E_k, k = 2..depth.
SteeringVerdict decide_steering(const BipartiteState& w, const SteeringOptions& options = {});

/// Canonical vertex ensembles of E_k = {(beta_1..beta_k) : beta_i >= 0, sum = omega^B}.
std::vector<Ensemble> extremal_ensembles(const BipartiteState& w, int k);

struct SectionOptions {
  bool fix_origin = true;  // linear sections (sigma(0) = 0); otherwise affine
};

struct SectionResult {
  bool exists = false;
  int solution_dimension = -1;             // dimension of the set of sections
  std::vector<RatVector> interval_vertices;  // vertices y of [0, omega^B]
  std::vector<RatVector> images;             // sigma(y) per vertex
  RatMatrix linear;                          // sigma(y) = linear y + offset on the span
  RatVector offset;
  LinearProgram program;
  FarkasCertificate farkas;
};

/// Sections sigma of W over [0, omega^B] with values in [0, u_A].
SectionResult affine_section_search(const BipartiteState& w, const SectionOptions& options = {});

bool verify_section(const BipartiteState& w, const SectionResult& s);

struct BisteeringVerdict {
  SteeringVerdict for_a;  // steering of omega^A through the adjoint map
  SteeringVerdict for_b;
};

BisteeringVerdict bisteering(const BipartiteState& w, const SteeringOptions& options = {});

/// For injective W with interior marginal that passes decide_steering, reports
/// whether W is an order isomorphism. Throws Error if a precondition fails.
bool injective_steering_implies_iso(const BipartiteState& w, const SteeringOptions& options = {});

struct SteeringProductApprox {
  PolyhedralCone cone;  // over Q^(n_A n_B)
  std::size_t generator_count = 0;
  std::size_t product_count = 0;
  std::vector<std::string> provenance;  // one label per generator fed to the hull
  bool inner_approximation = true;
};

/// Cone generated by the given steering states and all pure product states.
/// Throws Error if a generator does not pass decide_steering.
SteeringProductApprox steering_product_inner(const StateSpace& a, const StateSpace& b,
                                             const std::vector<BipartiteState>& generators,
                                             const SteeringOptions& options = {});

struct ScanEntry {
  RatVector alpha;
  std::string method;  // "product", "purify" or "none"
  bool steered = false;
  std::optional<BipartiteState> state;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  std::size_t interior_total = 0;
  std::size_t interior_steered = 0;
  bool all_steered = false;
  Homogeneity homogeneous = Homogeneity::unknown;
  bool weakly_self_dual = false;
  /// All interior states steered exactly when the space is homogeneous and weakly self-dual.
  bool consistent = false;
};

/// For each grid state, looks for a steering state in A (x)max A with that
/// B-marginal: the product alpha (x) alpha for pure alpha, purification for interior alpha.
ScanReport universal_self_steering_scan(const StateSpace& a, const std::vector<RatVector>& grid,
                                        const SteeringOptions& options = {});

/// Normalized states sum_i w_i p_i over the pure states p_i with weights in {0, 1/N, ..., 1}.
std::vector<RatVector> state_grid(const StateSpace& a, int denominator);

}  // namespace conelab

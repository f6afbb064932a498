#pragma once

// Exact linear programming over the rationals (two-phase simplex, Bland's rule).
//
// Variables are free; every sign restriction is an explicit row. Infeasible
// programs come back with a Farkas/Motzkin certificate that can be checked by
// substitution with verify_farkas.

#include <optional>
#include <string>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

struct LinearProgram {
  explicit LinearProgram(std::size_t vars = 0) : num_vars(vars) {}

  std::size_t num_vars;
  std::vector<RatVector> eq_rows;  // row . x == rhs
  RatVector eq_rhs;
  std::vector<RatVector> ge_rows;  // row . x >= rhs
  RatVector ge_rhs;
  std::vector<RatVector> gt_rows;  // row . x > rhs (feasibility mode only)
  RatVector gt_rhs;
  std::optional<RatVector> objective;  // maximized

  void add_eq(RatVector row, Rational rhs);
  void add_ge(RatVector row, Rational rhs);
  void add_le(RatVector row, Rational rhs);
  void add_gt(RatVector row, Rational rhs);

  /// Throws DimensionError if any row or the objective has the wrong width.
  void validate() const;
};

enum class LPStatus { feasible, infeasible, unbounded, optimal };

std::string to_string(LPStatus s);

/// Multipliers (y_eq free, y_ge >= 0, y_gt >= 0) with
///   y_eq^T E + y_ge^T G + y_gt^T S = 0   and
///   y_eq.e + y_ge.g + y_gt.s > 0, or == 0 with y_gt != 0.
/// Any feasible x would give 0 >= (that combination of right-hand sides), a contradiction.
struct FarkasCertificate {
  RatVector eq;
  RatVector ge;
  RatVector gt;
};

struct LPOutcome {
  LPStatus status = LPStatus::infeasible;
  RatVector point;            // feasible / optimal
  Rational value;             // optimal
  RatVector ray;              // unbounded: feasible direction with objective . ray > 0
  FarkasCertificate farkas;   // infeasible
};

LPOutcome lp_feasible(const LinearProgram& p);

/// Requires an objective and no strict rows.
LPOutcome lp_optimize(const LinearProgram& p);

bool satisfies(const LinearProgram& p, const RatVector& x);
bool verify_farkas(const LinearProgram& p, const FarkasCertificate& cert);
bool verify_unbounded_ray(const LinearProgram& p, const RatVector& ray);

/// Re-checks whichever certificate the outcome carries.
bool verify_outcome(const LinearProgram& p, const LPOutcome& outcome);

}  // namespace conelab

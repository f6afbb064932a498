#pragma once

// Exact Gaussian elimination over the rationals.

#include <optional>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

struct RowEchelon {
  RatMatrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

RowEchelon rref(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const std::vector<RatVector>& vectors, std::size_t dim);

/// Basis of {x : A x = 0}, one vector per free column, with a 1 in that column.
std::vector<RatVector> nullspace(const RatMatrix& a);

/// Basis of the orthogonal complement of span(vectors) in Q^dim.
std::vector<RatVector> orthogonal_complement(const std::vector<RatVector>& vectors, std::size_t dim);

/// Some x with A x = b, or nullopt if the system is inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b);

std::optional<RatMatrix> inverse(const RatMatrix& a);

/// Indices of a maximal linearly independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors, std::size_t dim);

/// Incremental span membership: reduces candidates against an echelon basis.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

  /// Adds v if independent of the current span; returns whether it was added.
  bool add(const RatVector& v);
  bool contains(const RatVector& v) const;
  std::size_t size() const { return basis_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  RatVector reduce(RatVector v) const;

  std::size_t dim_;
  std::vector<RatVector> basis_;
  std::vector<std::size_t> pivot_;
};

}  // namespace conelab

#include "conelab/linalg.hpp"

namespace conelab {

RowEchelon rref(const RatMatrix& a) {
  RatMatrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

std::size_t rank(const std::vector<RatVector>& vectors, std::size_t dim) {
  SpanBuilder span(dim);
  for (const auto& v : vectors) span.add(v);
  return span.size();
}

std::vector<RatVector> nullspace(const RatMatrix& a) {
  const auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v = zeros(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> orthogonal_complement(const std::vector<RatVector>& vectors, std::size_t dim) {
  if (vectors.empty()) {
    std::vector<RatVector> basis;
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(unit_vector(dim, i));
    return basis;
  }
  return nullspace(RatMatrix::from_rows(vectors, dim));
}

std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw DimensionError("solve_linear: right-hand side has wrong length");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  RatVector x = zeros(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors, std::size_t dim) {
  SpanBuilder span(dim);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (span.add(vectors[i])) idx.push_back(i);
  }
  return idx;
}

RatVector SpanBuilder::reduce(RatVector v) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const auto p = pivot_[k];
    if (sgn(v[p]) == 0) continue;
    const Rational f = v[p];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(basis_[k][j]) != 0) v[j] -= f * basis_[k][j];
    }
  }
  return v;
}

bool SpanBuilder::add(const RatVector& v) {
  if (v.size() != dim_) throw DimensionError("SpanBuilder: vector of wrong length");
  RatVector r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && sgn(r[p]) == 0) ++p;
  if (p == dim_) return false;
  const Rational inv = 1 / r[p];
  for (auto& x : r) x *= inv;
  // keep the stored basis fully reduced so reduce() is a single pass
  for (auto& b : basis_) {
    if (sgn(b[p]) == 0) continue;
    const Rational f = b[p];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(r[j]) != 0) b[j] -= f * r[j];
    }
  }
  basis_.push_back(std::move(r));
  pivot_.push_back(p);
  return true;
}

bool SpanBuilder::contains(const RatVector& v) const {
  if (v.size() != dim_) throw DimensionError("SpanBuilder: vector of wrong length");
  return is_zero(reduce(v));
}

}  // namespace conelab

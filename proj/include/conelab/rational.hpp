#pragma once

// Exact rational scalars, vectors and dense matrices.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conelab {

/// Arbitrary-precision rational. gmpxx keeps arithmetic results canonical
/// (lowest terms, positive denominator); parse_rational canonicalizes input.
using Rational = mpq_class;

using RatVector = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p" or "p/q". Rejects zero denominators, whitespace and
/// anything gmp would otherwise accept (hex prefixes, leading '+').
Rational parse_rational(std::string_view text);

/// "p/q" or "p"; inverse of parse_rational on canonical values.
std::string to_string(const Rational& value);
std::string to_string(const RatVector& v);

RatVector make_vector(std::initializer_list<Rational> values);
RatVector zeros(std::size_t n);
RatVector unit_vector(std::size_t n, std::size_t i);

Rational dot(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const RatVector& a, const Rational& s);
RatVector negate(const RatVector& a);
RatVector concat(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

/// Positive multiple of v with coprime integer entries. Zero maps to zero.
RatVector primitive(const RatVector& v);

/// If b = s * a for some s > 0, returns s.
bool positive_multiple(const RatVector& a, const RatVector& b, Rational* s = nullptr);

/// Lexicographic order, used to canonicalize ray and vertex lists.
bool lex_less(const RatVector& a, const RatVector& b);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& d);
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols = 0);
  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;
  std::vector<RatVector> row_list() const;
  std::vector<RatVector> column_list() const;

  RatMatrix transpose() const;
  RatVector apply(const RatVector& x) const;

  /// Row-major flattening.
  const std::vector<Rational>& data() const { return data_; }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::string to_string(const RatMatrix& m);

}  // namespace conelab

#pragma once

#include <random>
#include <string>
#include <vector>

#include "conelab/theory.hpp"

namespace testutil {

using namespace conelab;

inline RatVector V(const std::string& s) { return parse_vector(s); }

inline RatMatrix M(const std::vector<std::string>& rows) {
  std::vector<RatVector> r;
  for (const auto& s : rows) r.push_back(parse_vector(s));
  return RatMatrix::from_rows(r, r.front().size());
}

inline std::vector<RatVector> Vs(const std::vector<std::string>& rows) {
  std::vector<RatVector> r;
  for (const auto& s : rows) r.push_back(parse_vector(s));
  return r;
}

inline const Theory& fx() { return fixture_library(); }

// Random small integer vector with entries in [lo, hi].
inline RatVector random_vector(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RatVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Generators with x0 > |x1| + ... + |xn|, so their cone is pointed.
// Full dimension is not guaranteed.
inline std::vector<RatVector> random_cone_generators(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    RatVector v = random_vector(rng, dim, -3, 3);
    v[0] = std::uniform_int_distribution<int>(1, 3)(rng);
    for (std::size_t k = 1; k < dim; ++k) v[0] += abs(v[k]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace testutil

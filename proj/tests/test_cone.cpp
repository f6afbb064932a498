#include <random>

#include "conelab/cone.hpp"
#include "conelab/dd.hpp"
#include "conelab/linalg.hpp"
#include "conelab/polytope.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conelab;
using namespace testutil;

namespace {

PolyhedralCone cone_of(const std::string& space) { return fx().space(space).cone(); }

// Exhaustive oracle: the rays split into two nonempty groups whose spans are
// complementary. Returns true if no such split exists.
bool irreducible_by_bipartitions(const PolyhedralCone& c) {
  const auto& rays = c.rays();
  const std::size_t m = rays.size(), d = c.dim();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
    std::vector<RatVector> s, t;
    for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1 ? s : t).push_back(rays[i]);
    if (rank(s, d) + rank(t, d) == d) return false;
  }
  return true;
}

bool full_dim(const std::vector<RatVector>& gens, std::size_t dim) { return rank(gens, dim) == dim; }

}  // namespace

TEST_CASE("simplicial cone describes itself") {
  const auto facets = dd_convert(2, Vs({"1 0", "0 1"}));
  CHECK(facets == Vs({"0 1", "1 0"}));
  const auto c = PolyhedralCone::from_rays(3, Vs({"1 0 0", "0 1 0", "0 0 1"}));
  CHECK(dual_cone(c) == c);
  CHECK(is_simplicial(c));
}

TEST_CASE("square cone has four facets through adjacent ray pairs") {
  const auto c = cone_of("square_space");
  CHECK(c.rays().size() == 4);
  CHECK(c.facets() == Vs({"1 -1 0", "1 0 -1", "1 0 1", "1 1 0"}));
  // each facet holds exactly two rays
  for (std::size_t j = 0; j < 4; ++j) {
    int on = 0;
    for (std::size_t i = 0; i < 4; ++i) on += c.incidence()[i][j];
    CHECK(on == 2);
  }
}

TEST_CASE("cube cone and octahedron cone are dual") {
  const auto cube = cone_of("cube_space");
  const auto oct = cone_of("octahedron_space");
  CHECK(cube.rays().size() == 8);
  CHECK(cube.facets().size() == 6);
  CHECK(dual_cone(cube) == oct);
  CHECK(PolyhedralCone::from_rays(4, cube.facets()) == oct);
  CHECK(PolyhedralCone::from_rays(4, oct.facets()) == cube);
}

TEST_CASE("redundant generators are dropped, degenerate input rejected") {
  const auto c = PolyhedralCone::from_rays(2, Vs({"1 0", "0 1", "1 1", "2 0"}));
  CHECK(c.rays() == Vs({"0 1", "1 0"}));
  CHECK_THROWS_AS(PolyhedralCone::from_rays(2, Vs({"1 0", "-1 0", "0 1"})), ConeError);
  CHECK_THROWS_AS(PolyhedralCone::from_rays(3, Vs({"1 0 0", "0 1 0"})), ConeError);
  CHECK_THROWS_AS(PolyhedralCone::from_facets(2, Vs({"1 0"})), ConeError);
  try {
    PolyhedralCone::from_rays(2, Vs({"1 0", "-1 0", "0 1"}));
  } catch (const ConeError& e) {
    CHECK(e.kind() == ConeError::Kind::not_pointed);
  }
}

TEST_CASE("membership and extremality") {
  const auto c = cone_of("bit");
  CHECK(is_extremal(c, V("3 0")));
  CHECK_FALSE(is_extremal(c, V("1 1")));
  CHECK_FALSE(is_extremal(c, V("0 0")));
  CHECK_THROWS(is_extremal(c, V("-1 0")));
  const auto hex = cone_of("hexagon_space");
  for (const auto& r : hex.rays()) CHECK(is_extremal(hex, r));
  CHECK_FALSE(is_extremal(hex, add(hex.rays()[0], hex.rays()[1])));
}

TEST_CASE("face_of") {
  const auto bit = cone_of("bit");
  CHECK(face_of(bit, V("1/2 1/2")).ray_indices.size() == 2);
  CHECK(face_of(bit, V("0 0")).ray_indices.empty());
  CHECK(face_of(bit, V("0 0")).dimension == 0);
  CHECK(face_of(bit, V("1 0")).dimension == 1);
  const auto sq = cone_of("square_space");
  CHECK(face_of(sq, V("1 0 0")).dimension == 3);
  const auto edge = face_of(sq, V("2 2 0"));  // midpoint of (1,1,1) and (1,1,-1)
  CHECK(edge.dimension == 2);
  CHECK(edge.rays() == Vs({"1 1 -1", "1 1 1"}));
}

TEST_CASE("face lattice of the square cone") {
  const auto faces = all_faces(cone_of("square_space"));
  std::vector<int> count(4, 0);
  for (const auto& f : faces) ++count[f.dimension];
  CHECK(count == std::vector<int>{1, 4, 4, 1});
}

TEST_CASE("face axiom and order-unit property on fixture faces") {
  for (const auto& name : {"square_space", "pentagon_space", "hexagon_space", "cube_space", "octahedron_space"}) {
    const auto c = cone_of(name);
    for (const auto& f : all_faces(c)) {
      RatVector y = zeros(c.dim());
      for (const auto& r : f.rays()) y = add(y, r);
      const Face g = face_of(c, y);
      CHECK(g.ray_indices == f.ray_indices);
      // y is an order unit of the face: y - eps r stays in the cone
      for (const auto& r : f.rays()) CHECK(contains(c, sub(y, scale(r, Rational(1, 2)))));
      // face axiom on ray pairs: r + s in the face forces both in
      for (std::size_t i = 0; i < c.rays().size(); ++i)
        for (std::size_t k = 0; k < c.rays().size(); ++k) {
          const RatVector sum = add(c.rays()[i], c.rays()[k]);
          const Face h = face_of(c, sum);
          const bool inside =
              std::includes(f.ray_indices.begin(), f.ray_indices.end(), h.ray_indices.begin(), h.ray_indices.end());
          if (inside) CHECK((f.contains_ray(i) && f.contains_ray(k)));
        }
    }
  }
}

TEST_CASE("ordered direct sums") {
  const auto r1 = PolyhedralCone::from_rays(1, Vs({"1"}));
  const auto sum = ordered_direct_sum(r1, r1);
  CHECK(sum == cone_of("bit"));
  CHECK(irreducible_components(sum).size() == 2);
  CHECK(is_irreducible(cone_of("square_space")));
  CHECK(is_irreducible(cone_of("hexagon_space")));
  const auto mixed = ordered_direct_sum(cone_of("square_space"), r1);
  const auto comps = irreducible_components(mixed);
  REQUIRE(comps.size() == 2);
  std::vector<std::size_t> sizes = {comps[0].cone.rays().size(), comps[1].cone.rays().size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 4});
}

TEST_CASE("irreducible components agree with the bipartition oracle") {
  std::mt19937_64 rng(99);
  int reducible = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<RatVector> gens;
    const std::size_t dim = 2 + trial % 3;
    if (trial % 2 == 0) {
      gens = random_cone_generators(rng, dim, dim + 1 + trial % 3);
    } else {
      // direct sum of two random pieces
      const std::size_t d1 = 1 + trial % 2, d2 = dim - d1 + 1;
      auto a = random_cone_generators(rng, d1, d1 + 1);
      auto b = random_cone_generators(rng, d2, d2 + 1);
      if (!full_dim(a, d1) || !full_dim(b, d2)) continue;
      const auto s = ordered_direct_sum(PolyhedralCone::from_rays(d1, a), PolyhedralCone::from_rays(d2, b));
      gens = s.rays();
    }
    if (!full_dim(gens, gens.front().size())) continue;
    const auto c = PolyhedralCone::from_rays(gens.front().size(), gens);
    const auto comps = irreducible_components(c);
    CHECK((comps.size() == 1) == irreducible_by_bipartitions(c));
    if (comps.size() > 1) ++reducible;
    // recombining the summands reproduces the cone under the change of basis
    std::vector<RatVector> basis;
    PolyhedralCone acc;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      basis.insert(basis.end(), comps[k].basis.begin(), comps[k].basis.end());
      acc = k == 0 ? comps[0].cone : ordered_direct_sum(acc, comps[k].cone);
    }
    CHECK(transform(acc, RatMatrix::from_columns(basis, c.dim())) == c);
  }
  CHECK(reducible > 10);
}

TEST_CASE("DD round trip and double dual on random cones") {
  std::mt19937_64 rng(12345);
  int done = 0;
  while (done < 200) {
    const std::size_t dim = 2 + done % 4;
    const std::size_t count = dim + std::uniform_int_distribution<std::size_t>(0, 10 - dim)(rng);
    const auto gens = random_cone_generators(rng, dim, count);
    if (!full_dim(gens, dim)) continue;
    const auto c = PolyhedralCone::from_rays(dim, gens);
    const auto back = dd_convert_inv(dim, dd_convert(dim, gens));
    CHECK(back == c.rays());
    CHECK(dual_cone(dual_cone(c)) == c);
    CHECK(PolyhedralCone::from_facets(dim, c.facets()) == c);
    for (const auto& r : c.rays())
      for (const auto& f : c.facets()) CHECK(sgn(dot(r, f)) >= 0);
    for (const auto& g : gens) CHECK(contains(c, g));
    ++done;
  }
}

TEST_CASE("polytope vertices and convex hulls") {
  std::vector<HalfSpace> box;
  for (std::size_t i = 0; i < 2; ++i) {
    box.push_back({unit_vector(2, i), 0});
    box.push_back({negate(unit_vector(2, i)), -1});
  }
  CHECK(polytope_vertices(2, box) == Vs({"0 0", "0 1", "1 0", "1 1"}));
  box.push_back({V("1 1"), 3});
  CHECK(polytope_vertices(2, box).empty());
  CHECK_THROWS(polytope_vertices(1, {{V("1"), 0}}));
  CHECK(convex_hull_vertices(Vs({"0 0", "2 0", "0 2", "1/2 1/2", "1 1"})) == Vs({"0 0", "0 2", "2 0"}));
}

TEST_CASE("affine hull dimension") {
  LinearProgram p(3);
  p.add_eq(V("1 1 1"), 1);
  for (std::size_t i = 0; i < 3; ++i) p.add_ge(unit_vector(3, i), 0);
  CHECK(affine_hull(p).dimension == 2);
  p.add_le(V("1 0 0"), 0);
  CHECK(affine_hull(p).dimension == 1);
  p.add_le(V("0 1 0"), 0);
  const auto h = affine_hull(p);
  CHECK(h.dimension == 0);
  CHECK(h.points.front() == V("0 0 1"));
  p.add_ge(V("0 0 1"), 2);
  CHECK(affine_hull(p).dimension == -1);
}

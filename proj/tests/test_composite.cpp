#include <random>

#include "conelab/composite.hpp"
#include "conelab/linalg.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conelab;
using namespace testutil;

TEST_CASE("kron and tensor layout") {
  CHECK(kron(V("1 2"), V("3 4 5")) == V("3 4 5 6 8 10"));
  const RatMatrix w = product_matrix(V("1 2"), V("3 4 5"));
  CHECK(w.rows() == 3);
  CHECK(w.cols() == 2);
  CHECK(tensor_vector(w) == kron(V("1 2"), V("3 4 5")));
  CHECK(matrix_from_tensor(tensor_vector(w), 2, 3) == w);
}

TEST_CASE("bipartite states validate shape and positivity") {
  const auto& bit = fx().space("bit");
  CHECK_THROWS_AS(BipartiteState(bit, bit, M({"1 0 0", "0 1 0"})), Error);
  CHECK_THROWS_AS(BipartiteState(bit, bit, M({"1 -1", "0 1"})), Error);
  const BipartiteState w(bit, bit, M({"1/2 0", "0 1/2"}));
  CHECK(w.normalization() == 1);
  CHECK(w.value(V("1 0"), V("1 0")) == Rational(1, 2));
  CHECK(w.value(V("1 0"), V("0 1")) == 0);
}

TEST_CASE("marginals and conditional states") {
  const auto& w = fx().state("paper_sec5_nonsteering");
  CHECK(marginal_b(w).vector == V("1/2 1/2"));
  CHECK(marginal_a(w).vector == V("1/4 1/4 1/2"));
  const auto c = conditional_state(w, V("1 0 0"));
  REQUIRE(c.has_value());
  CHECK(c->vector == V("1 0"));
  CHECK(c->normalization == 1);
  CHECK(conditional_state(w, V("1 0 1"))->vector == V("2/3 1/3"));
  CHECK_THROWS_AS(conditional_state(w, V("2 0 0")), Error);

  const BipartiteState t = w.transposed();
  CHECK(marginal_a(t).vector == marginal_b(w).vector);
  CHECK(t.matrix() == w.matrix().transpose());
}

TEST_CASE("min tensor of simplices equals max tensor") {
  const auto& bit = fx().space("bit");
  const auto& trit = fx().space("trit");
  const auto mn = min_tensor(bit, trit);
  const auto mx = max_tensor(bit, trit);
  CHECK(mn.space.cone() == mx.space.cone());
  CHECK(mn.space.cone().rays().size() == 6);
  CHECK(mx.space.unit() == V("1 1 1 1 1 1"));
}

TEST_CASE("square tensor square: max strictly larger than min") {
  const auto& sq = fx().space("square_space");
  const auto mn = min_tensor(sq, sq);
  const auto mx = max_tensor(sq, sq);
  CHECK(mn.space.cone().rays().size() == 16);
  CHECK(mx.space.cone().facets().size() == 16);
  CHECK(mx.space.cone().rays().size() > 16);
  for (const auto& r : mn.space.cone().rays()) CHECK(contains(mx.space.cone(), r));
  // the self-duality witness is an entangled element of the max tensor
  const auto eta = is_weakly_self_dual(sq);
  REQUIRE(eta.has_value());
  const RatVector t = tensor_vector(eta->matrix);
  CHECK(contains(mx.space.cone(), t));
  CHECK_FALSE(contains(mn.space.cone(), t));
}

TEST_CASE("composites between min and max") {
  const auto& sq = fx().space("square_space");
  const auto mn = min_tensor(sq, sq);
  auto rays = mn.space.cone().rays();
  const auto eta = is_weakly_self_dual(sq);
  rays.push_back(tensor_vector(eta->matrix));
  const auto c = custom_tensor(sq, sq, rays);
  CHECK(c.kind == TensorKind::custom);
  CHECK(contains(c.space.cone(), tensor_vector(eta->matrix)));
  CHECK(custom_tensor(sq, sq, mn.space.cone().rays()).space.cone() == mn.space.cone());
  rays.pop_back();
  rays.pop_back();
  CHECK_THROWS_AS(custom_tensor(sq, sq, rays), Error);  // misses a product state
  const auto& bit = fx().space("bit");
  CHECK_THROWS_AS(custom_tensor(bit, bit, Vs({"1 0 0 0", "0 1 0 0", "0 0 1 0", "0 0 0 1", "1 -1 0 1"})), Error);
}

TEST_CASE("max tensor elements are exactly positive maps") {
  std::mt19937_64 rng(5);
  const auto& sq = fx().space("square_space");
  const auto& bit = fx().space("bit");
  const auto mx = max_tensor(sq, bit);
  for (int trial = 0; trial < 100; ++trial) {
    const RatMatrix m = RatMatrix::from_rows({random_vector(rng, 3, -2, 3), random_vector(rng, 3, -2, 3)}, 3);
    CHECK(contains(mx.space.cone(), tensor_vector(m)) == is_positive_map(m, dual_cone(sq.cone()), bit.cone()));
  }
}

TEST_CASE("the diag(2, 1) map on a bit decomposes") {
  const auto& bit = fx().space("bit");
  const RatMatrix chi = fx().map("bit_scaling").matrix;
  const auto r = map_is_extremal(chi, bit.cone(), bit.cone());
  CHECK_FALSE(r.extremal);
  REQUIRE(r.psi.has_value());
  CHECK(verify_decomposition(chi, *r.psi, bit.cone(), bit.cone()));
  CHECK(verify_decomposition(chi, M({"1/2 0", "0 1/2"}), bit.cone(), bit.cone()));
  CHECK(chi - M({"1/2 0", "0 1/2"}) == M({"3/2 0", "0 1/2"}));
  CHECK_FALSE(verify_decomposition(chi, M({"1 0", "0 1/2"}), bit.cone(), bit.cone()));  // a multiple of chi
  CHECK_FALSE(verify_decomposition(chi, M({"3 0", "0 0"}), bit.cone(), bit.cone()));
}

TEST_CASE("extremal maps") {
  const auto& bit = fx().space("bit");
  CHECK(map_is_extremal(M({"1 0", "0 0"}), bit.cone(), bit.cone()).extremal);
  CHECK(map_is_extremal(M({"0 1", "0 0"}), bit.cone(), bit.cone()).extremal);
  CHECK_THROWS_AS(map_is_extremal(M({"0 0", "0 0"}), bit.cone(), bit.cone()), Error);
  CHECK_THROWS_AS(map_is_extremal(M({"-1 0", "0 0"}), bit.cone(), bit.cone()), Error);
  // rank one maps onto extreme rays are extremal
  const auto& sq = fx().space("square_space");
  const RatMatrix rank_one = product_matrix(V("1 1 1"), V("1 1 1"));
  CHECK(map_is_extremal(rank_one, dual_cone(sq.cone()), sq.cone()).extremal);
  const RatMatrix mixed = rank_one + product_matrix(V("1 -1 -1"), V("1 -1 -1"));
  const auto r = map_is_extremal(mixed, dual_cone(sq.cone()), sq.cone());
  CHECK_FALSE(r.extremal);
  REQUIRE(r.psi.has_value());
  CHECK(verify_decomposition(mixed, *r.psi, dual_cone(sq.cone()), sq.cone()));
}

TEST_CASE("isomorphism states") {
  const auto& sq = fx().space("square_space");
  const auto eta = is_weakly_self_dual(sq);
  REQUIRE(eta.has_value());
  const BipartiteState w(sq, sq, eta->matrix);
  const auto iso = is_isomorphism_state(w);
  REQUIRE(iso.has_value());
  CHECK(verify_order_iso(dual_cone(sq.cone()), sq.cone(), *iso));
  CHECK(is_pure_in_max(w).extremal);
  CHECK_FALSE(is_isomorphism_state(fx().state("square_unique_section")).has_value());
  CHECK(is_isomorphism_state(fx().state("classical_correlated_3")).has_value());
}

TEST_CASE("purification on simplices and the square") {
  const auto& trit = fx().space("trit");
  const auto p = purify(trit, V("1/2 1/3 1/6"));
  REQUIRE(p.has_value());
  CHECK(marginal_b(*p).vector == V("1/2 1/3 1/6"));
  CHECK(is_isomorphism_state(*p).has_value());
  CHECK_THROWS_AS(purify(trit, V("1 0 0")), Error);
  CHECK_THROWS_AS(purify(trit, V("1 1 1")), Error);

  const auto& sq = fx().space("square_space");
  const auto center = purify(sq, V("1 0 0"));
  REQUIRE(center.has_value());
  CHECK(marginal_b(*center).vector == V("1 0 0"));
  CHECK(is_isomorphism_state(*center).has_value());
  CHECK(is_pure_in_max(*center).extremal);
  CHECK_FALSE(purify(sq, V("1 1/2 0")).has_value());
}

TEST_CASE("factorization through a face") {
  const auto& sq = fx().space("square_space");
  const auto dual = dual_cone(sq.cone());
  // rank-two map killing the difference of two opposite facets of the dual
  const auto& a1 = fx().state("square_unique_section");
  const auto& a2 = fx().state("square_many_sections");
  for (const auto* w : {&a1, &a2}) {
    std::optional<Factorization> f = factors_isomorphically_through(w->matrix(), dual, sq.cone());
    if (!f) f = factors_isomorphically_through(w->matrix(), dual, sq.cone(), FactorTarget::ray_span);
    REQUIRE(f.has_value());
    const RatMatrix& p = f->idempotent;
    CHECK(p * p == p);
    CHECK(w->matrix() * p == w->matrix());
    CHECK(rank(p) == rank(w->matrix()));
    CHECK(is_positive_map(p, dual, dual));
  }
  // an isomorphism factors through the whole cone
  const auto eta = is_weakly_self_dual(sq);
  const auto f = factors_isomorphically_through(eta->matrix, dual, sq.cone());
  REQUIRE(f.has_value());
  CHECK(f->idempotent == RatMatrix::identity(3));
}

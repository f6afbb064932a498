// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "conelab/dd.hpp"
#include "conelab/linalg.hpp"
#include "conelab/steering.hpp"
#include "test_util.hpp"

using namespace conelab;
using namespace testutil;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond) {
      out_.pass = false;
      if (failures_++ < 3) note("fail: " + what);
    }
  }
  void note(const std::string& s) { out_.detail += (out_.detail.empty() ? "" : "; ") + s; }
  Outcome done() {
    if (failures_ > 3) note(std::to_string(failures_) + " failures in total");
    return out_;
  }

 private:
  Outcome out_;
  int failures_ = 0;
};

bool same_set(std::vector<RatVector> a, std::vector<RatVector> b) {
  std::sort(a.begin(), a.end(), lex_less);
  std::sort(b.begin(), b.end(), lex_less);
  return a == b;
}

Outcome criterion1() {
  Check c;
  const auto& w = fx().state("paper_sec5_nonsteering");
  c.require(same_set(image_interval(w), Vs({"0 0", "1/4 0", "0 1/4", "1/2 1/4", "1/4 1/2", "1/2 1/2"})),
            "image interval is the hexagon");
  const auto v = decide_steering(w, {2});
  c.require(v.status == SteeringStatus::not_steering, "not steering at K=2");
  const auto expected = canonical(fx().ensemble("nonsteering_pair").ensemble).parts;
  c.require(expected == Vs({"0 1/2", "1/2 0"}), "fixture ensemble is {(0,1/2),(1/2,0)}");
  c.require(v.counterexample && canonical(*v.counterexample).parts == expected, "counterexample {(0,1/2),(1/2,0)}");
  c.require(v.failed_lift && verify_lift(*v.failed_lift), "Farkas certificate verifies");
  return c.done();
}

Outcome criterion2() {
  Check c;
  const auto& bit = fx().space("bit");
  const RatMatrix chi = fx().map("bit_scaling").matrix;
  c.require(chi == M({"2 0", "0 1"}), "chi(x,y) = (2x,y)");
  const auto r = map_is_extremal(chi, bit.cone(), bit.cone());
  c.require(!r.extremal, "chi is not extremal");
  c.require(r.psi && verify_decomposition(chi, *r.psi, bit.cone(), bit.cone()), "returned decomposition verifies");
  const RatMatrix psi = M({"1/2 0", "0 1/2"}), mu = M({"3/2 0", "0 1/2"});
  c.require(psi + mu == chi, "psi + mu = chi");
  c.require(verify_decomposition(chi, psi, bit.cone(), bit.cone()), "psi = diag(1/2,1/2) decomposition verifies");
  // the same map as a normalized bipartite state
  const auto& w = fx().state("bit_scaled_state");
  c.require(Rational(3) * w.matrix() == chi, "state matrix is chi / 3");
  const auto p = is_pure_in_max(w);
  c.require(!p.extremal && p.psi && verify_decomposition(w.matrix(), *p.psi, bit.cone(), bit.cone()),
            "state is mixed in the max tensor product");
  return c.done();
}

Outcome criterion3() {
  Check c;
  std::size_t instances = 0;
  for (const auto& name : {"square_space", "pentagon_space", "hexagon_space"}) {
    const auto& cone = fx().space(name).cone();
    c.require(is_irreducible(cone), std::string(name) + " irreducible");
    for (const auto& w : automorphisms(cone)) {
      ++instances;
      c.require(verify_order_iso(cone, cone, w), "automorphism verifies");
      c.require(map_is_extremal(w.matrix, cone, cone).extremal, std::string(name) + " automorphism extremal");
    }
  }
  c.require(instances >= 20, "at least 20 automorphisms");
  c.note(std::to_string(instances) + " automorphisms");
  return c.done();
}

// Interior points of the grid of normalized states with denominator n.
std::vector<RatVector> interior_grid(const StateSpace& a, int n) {
  std::vector<RatVector> out;
  for (const auto& g : state_grid(a, n))
    if (is_interior(a.cone(), g)) out.push_back(g);
  return out;
}

Outcome criterion4() {
  Check c;
  const std::vector<std::pair<std::string, int>> spaces = {{"simplex_2", 11}, {"simplex_3", 6}, {"simplex_4", 6}};
  std::size_t purified = 0, iso = 0, marg = 0, pure = 0, total = 0;
  for (const auto& [name, den] : spaces) {
    const auto& a = fx().space(name);
    const auto grid = interior_grid(a, den);
    c.require(grid.size() >= 10, name + " grid has 10 interior states");
    for (const auto& alpha : grid) {
      ++total;
      const auto p = purify(a, alpha);
      c.require(p.has_value(), name + " purify " + to_string(alpha));
      if (!p) continue;
      ++purified;
      const bool i = is_isomorphism_state(*p).has_value();
      const bool m = marginal_b(*p).vector == alpha;
      const bool x = is_pure_in_max(*p).extremal;
      iso += i;
      marg += m;
      pure += x;
      c.require(i, name + " isomorphism state");
      c.require(m, name + " marginal");
      c.require(x, name + " pure in max tensor at " + to_string(alpha));
    }
  }
  std::ostringstream s;
  s << total << " states: purified " << purified << ", iso " << iso << ", marginal " << marg << ", pure " << pure;
  c.note(s.str());
  return c.done();
}

Outcome criterion5() {
  Check c;
  const auto& sq = fx().space("square_space");
  c.require(is_homogeneous(sq).status == Homogeneity::no, "square space not homogeneous");
  const auto r = universal_self_steering_scan(sq, state_grid(sq, 4), {2});
  std::size_t missing = 0;
  for (const auto& e : r.entries)
    if (is_interior(sq.cone(), e.alpha) && !e.state) ++missing;
  c.require(missing >= 1, "an interior state without purification");
  c.require(r.consistent, "scan consistent with homogeneity and self-duality");
  c.note(std::to_string(missing) + " of " + std::to_string(r.interior_total) + " interior states unpurified");
  return c.done();
}

Outcome criterion6() {
  Check c;
  const auto& w = fx().state("cube_hexagon_pairs");
  const auto v = decide_steering(w, {2});
  c.require(v.status == SteeringStatus::steering_up_to && v.depth == 2, "steering up to 2");
  // two-part ensembles of opposite hexagon vertices at weight 1/2
  const auto& hex = w.space_b().cone().rays();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < hex.size(); ++i)
    for (std::size_t k = i + 1; k < hex.size(); ++k) {
      const RatVector s = add(hex[i], hex[k]);
      if (s[1] != 0 || s[2] != 0) continue;
      const Ensemble e = canonical(Ensemble{{scale(hex[i], Rational(1, 2)), scale(hex[k], Rational(1, 2))}});
      ++pairs;
      const bool lifted = std::any_of(v.lifted.begin(), v.lifted.end(),
                                      [&](const LiftedEnsemble& l) { return canonical(l.ensemble).parts == e.parts; });
      c.require(lifted, "opposite pair lifted " + to_string(e.parts[0]));
    }
  c.require(pairs == 3, "three opposite vertex pairs");
  for (const auto& l : v.lifted) c.require(verify_observable_lift(w, l.ensemble, l.effects), "lift verifies");
  const auto affine = affine_section_search(w, {false});
  c.require(!affine.exists && verify_section(w, affine), "no affine section (certified)");
  c.require(!affine_section_search(w).exists, "no linear section");
  return c.done();
}

Outcome criterion7() {
  Check c;
  const auto& a1 = fx().state("square_unique_section");
  const auto& a2 = fx().state("square_many_sections");
  const auto s1 = affine_section_search(a1);
  const auto s2 = affine_section_search(a2);
  c.require(s1.exists && s1.solution_dimension == 0 && verify_section(a1, s1), "A.1 has exactly one section");
  c.require(s2.exists && s2.solution_dimension >= 1 && verify_section(a2, s2), "A.2 has at least two sections");
  for (const auto* w : {&a1, &a2}) {
    c.require(decide_steering(*w, {2}).status == SteeringStatus::steering_up_to, "steers at K=2");
  }
  c.note("section dimensions " + std::to_string(s1.solution_dimension) + " and " +
         std::to_string(s2.solution_dimension));
  return c.done();
}

// Random positive map A* -> B: nonnegative combination of product maps, plus
// (for A = B) a positive multiple of an isomorphism witness.
RatMatrix random_positive_map(std::mt19937_64& rng, const StateSpace& a, const StateSpace& b,
                              const std::optional<OrderIsoWitness>& iso) {
  std::uniform_int_distribution<int> coeff(0, 3);
  std::uniform_int_distribution<std::size_t> terms(1, 3);
  RatMatrix m(b.dim(), a.dim());
  const auto& ra = a.cone().rays();
  const auto& rb = b.cone().rays();
  const std::size_t k = terms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    const auto& x = ra[std::uniform_int_distribution<std::size_t>(0, ra.size() - 1)(rng)];
    const auto& y = rb[std::uniform_int_distribution<std::size_t>(0, rb.size() - 1)(rng)];
    m = m + Rational(1 + coeff(rng)) * product_matrix(x, y);
  }
  if (iso && coeff(rng) > 0) m = m + Rational(coeff(rng)) * iso->matrix;
  return m;
}

Outcome criterion8() {
  Check c;
  std::mt19937_64 rng(8);
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"bit", "bit"}, {"trit", "bit"}, {"bit", "trit"}, {"square_space", "square_space"}, {"square_space", "bit"},
      {"trit", "square_space"}, {"pentagon_space", "pentagon_space"}};
  std::size_t states = 0, steering = 0, sections = 0;
  for (int trial = 0; trial < 105; ++trial) {
    const auto& [na, nb] = pairs[trial % pairs.size()];
    const auto& a = fx().space(na);
    const auto& b = fx().space(nb);
    std::optional<OrderIsoWitness> iso;
    if (na == nb) iso = is_weakly_self_dual(a);
    const BipartiteState w(a, b, random_positive_map(rng, a, b, iso));
    ++states;
    const bool steers = decide_steering(w, {2}).status == SteeringStatus::steering_up_to;
    const auto sec = affine_section_search(w);
    steering += steers;
    sections += sec.exists;
    c.require(verify_section(w, sec), "section certificate verifies");
    if (steers) c.require(face_condition(w), "steering implies face condition");
    if (sec.exists) c.require(steers, "section implies steering");
  }
  c.require(states >= 100, "at least 100 states");
  c.note(std::to_string(states) + " states, " + std::to_string(steering) + " steering, " + std::to_string(sections) +
         " with sections");
  return c.done();
}

Outcome criterion9() {
  Check c;
  std::mt19937_64 rng(9);
  const std::vector<std::string> spaces = {"bit", "trit", "square_space", "pentagon_space", "hexagon_space"};
  std::size_t tested = 0, isos = 0, attempts = 0;
  for (const auto& name : {"classical_correlated_2", "classical_correlated_3"}) {
    const auto& w = fx().state(name);
    ++tested;
    const bool steers = decide_steering(w, {2}).status == SteeringStatus::steering_up_to;
    const bool iso = is_isomorphism_state(w).has_value();
    isos += iso;
    c.require(steers && iso, std::string(name) + " steers and is an isomorphism state");
  }
  while (tested < 60 && attempts < 2000) {
    ++attempts;
    const auto& a = fx().space(spaces[attempts % spaces.size()]);
    const auto eta = is_weakly_self_dual(a);
    const auto autos = automorphisms(a.cone());
    RatMatrix m(a.dim(), a.dim());
    const int mode = static_cast<int>(attempts % 3);
    // mode 0: an isomorphism; mode 1: isomorphism plus products; mode 2: products only
    if (mode != 2) {
      const auto& g = autos[std::uniform_int_distribution<std::size_t>(0, autos.size() - 1)(rng)];
      m = Rational(std::uniform_int_distribution<int>(1, 3)(rng)) * (g.matrix * eta->matrix);
    }
    if (mode != 0) m = m + random_positive_map(rng, a, a, std::nullopt);
    if (rank(m) != a.dim()) continue;
    const BipartiteState w(a, a, m);
    if (!is_interior(a.cone(), marginal_b(w).vector)) continue;
    ++tested;
    const bool steers = decide_steering(w, {2}).status == SteeringStatus::steering_up_to;
    const bool iso = is_isomorphism_state(w).has_value();
    isos += iso;
    c.require(steers == iso, "steering at K=2 iff isomorphism state on " + to_string(m.row(0)));
  }
  c.require(tested >= 50, "at least 50 injective states");
  c.note(std::to_string(tested) + " states, " + std::to_string(isos) + " isomorphisms");
  return c.done();
}

Outcome criterion10() {
  Check c;
  for (const auto& name : fx().space_names()) {
    const auto& cone = fx().space(name).cone();
    c.require(dd_convert_inv(cone.dim(), dd_convert(cone.dim(), cone.rays())) == cone.rays(), name + " round trip");
    c.require(dual_cone(dual_cone(cone)) == cone, name + " double dual");
  }
  std::mt19937_64 rng(10);
  std::size_t random_cones = 0;
  while (random_cones < 200) {
    const std::size_t dim = 2 + random_cones % 4;
    const std::size_t count = std::uniform_int_distribution<std::size_t>(dim, 10)(rng);
    const auto gens = random_cone_generators(rng, dim, count);
    if (rank(gens, dim) != dim) continue;
    const auto cone = PolyhedralCone::from_rays(dim, gens);
    c.require(dd_convert_inv(dim, dd_convert(dim, gens)) == cone.rays(), "random round trip");
    c.require(dual_cone(dual_cone(cone)) == cone, "random double dual");
    ++random_cones;
  }
  const auto& cube = fx().space("cube_space").cone();
  const auto& oct = fx().space("octahedron_space").cone();
  c.require(dual_cone(cube) == oct && dual_cone(oct) == cube, "cube and octahedron dual");
  const auto& sq = fx().space("square_space");
  const auto w = is_weakly_self_dual(sq);
  c.require(w && verify_order_iso(dual_cone(sq.cone()), sq.cone(), *w), "square self-duality witness");
  c.note(std::to_string(random_cones) + " random cones");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 nonsteering trit-to-bit state", criterion1},
      {"2 non-extremal diag(2,1)", criterion2},
      {"3 automorphisms of irreducible cones are extremal", criterion3},
      {"4 purification on simplices", criterion4},
      {"5 square space not homogeneous, scan gap", criterion5},
      {"6 cube-to-hexagon steers pairs without a section", criterion6},
      {"7 unique and non-unique sections", criterion7},
      {"8 steering implies face condition, section implies steering", criterion8},
      {"9 injective steering iff isomorphism", criterion9},
      {"10 geometry kernel", criterion10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %s: %s%s%s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.empty() ? "" : " - ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

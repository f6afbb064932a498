#include "conelab/dd.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "conelab/linalg.hpp"

namespace conelab {

namespace {

struct Ray {
  RatVector v;
  boost::dynamic_bitset<> zero;  // processed constraints tight at v
};

}  // namespace

std::vector<RatVector> canonical_ray_list(std::vector<RatVector> rays) {
  for (auto& r : rays) r = primitive(r);
  rays.erase(std::remove_if(rays.begin(), rays.end(), [](const RatVector& r) { return is_zero(r); }),
             rays.end());
  std::sort(rays.begin(), rays.end(), lex_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

DDResult dd_enumerate(std::size_t dim, const std::vector<RatVector>& ge, const std::vector<RatVector>& eq) {
  const std::size_t m = eq.size() + ge.size();
  std::vector<const RatVector*> cons;
  cons.reserve(m);
  for (const auto& e : eq) cons.push_back(&e);
  for (const auto& g : ge) cons.push_back(&g);
  for (const auto* c : cons) {
    if (c->size() != dim) throw DimensionError("dd_enumerate: constraint of wrong width");
  }

  std::vector<RatVector> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const RatVector& h = *cons[k];
    const bool equality = k < eq.size();

    // Cut the lineality space first: it stays orthogonal to all processed constraints.
    std::size_t piv = lin.size();
    Rational hp;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      hp = dot(h, lin[i]);
      if (sgn(hp) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < lin.size()) {
      RatVector l0 = lin[piv];
      if (sgn(hp) < 0) {
        l0 = negate(l0);
        hp = -hp;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(piv));
      for (auto& l : lin) {
        const Rational v = dot(h, l);
        if (sgn(v) != 0) l = sub(l, scale(l0, v / hp));
      }
      for (auto& r : rays) {
        const Rational v = dot(h, r.v);
        if (sgn(v) != 0) r.v = primitive(sub(r.v, scale(l0, v / hp)));
        r.zero.push_back(true);
      }
      if (!equality) {
        Ray nr{primitive(l0), boost::dynamic_bitset<>(k + 1)};
        for (std::size_t j = 0; j < k; ++j) nr.zero.set(j);
        rays.push_back(std::move(nr));
      }
      continue;
    }

    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i].v);
      if (sgn(val[i]) > 0) pos.push_back(i);
      else if (sgn(val[i]) < 0) neg.push_back(i);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = sgn(val[i]);
      if (s == 0 || (s > 0 && !equality)) {
        Ray r = rays[i];
        r.zero.push_back(s == 0);
        next.push_back(std::move(r));
      }
    }
    for (auto p : pos) {
      for (auto n : neg) {
        const auto common = rays[p].zero & rays[n].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v = primitive(add(scale(rays[n].v, val[p]), scale(rays[p].v, -val[n])));
        nr.zero = common;
        nr.zero.push_back(true);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  DDResult out;
  std::vector<RatVector> rv;
  rv.reserve(rays.size());
  for (auto& r : rays) rv.push_back(std::move(r.v));
  out.rays = canonical_ray_list(std::move(rv));
  out.lineality = std::move(lin);
  return out;
}

DDResult dd_dual(std::size_t dim, const std::vector<RatVector>& generators) {
  return dd_enumerate(dim, generators);
}

}  // namespace conelab

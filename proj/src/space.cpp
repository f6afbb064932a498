#include "conelab/space.hpp"

#include <algorithm>

#include "conelab/linalg.hpp"
#include "conelab/lp.hpp"

namespace conelab {

StateSpace::StateSpace(PolyhedralCone cone, RatVector unit) : cone_(std::move(cone)), unit_(std::move(unit)) {
  if (unit_.size() != cone_.dim()) throw DimensionError("unit of wrong width");
  for (const auto& r : cone_.rays()) {
    if (sgn(dot(unit_, r)) <= 0) {
      throw Error("unit " + to_string(unit_) + " is not strictly positive on ray " + to_string(r));
    }
  }
}

std::vector<RatVector> StateSpace::pure_states() const {
  std::vector<RatVector> out;
  for (const auto& r : cone_.rays()) out.push_back(scale(r, 1 / dot(unit_, r)));
  return out;
}

RatVector StateSpace::barycenter() const {
  RatVector sum = zeros(dim());
  const auto pure = pure_states();
  for (const auto& p : pure) sum = add(sum, p);
  return scale(sum, Rational(1, pure.size()));
}

State make_state(const StateSpace& a, RatVector v) {
  if (!contains(a.cone(), v)) throw Error("vector " + to_string(v) + " is not in the positive cone");
  Rational n = dot(a.unit(), v);
  return State{std::move(v), n};
}

bool is_effect(const StateSpace& a, const RatVector& f) {
  if (f.size() != a.dim()) throw DimensionError("effect of wrong width");
  for (const auto& r : a.cone().rays()) {
    const Rational v = dot(f, r);
    if (sgn(v) < 0 || v > dot(a.unit(), r)) return false;
  }
  return true;
}

Effect make_effect(const StateSpace& a, RatVector f) {
  if (!is_effect(a, f)) throw Error("functional " + to_string(f) + " is not between 0 and the unit");
  return Effect{std::move(f)};
}

Observable make_observable(const StateSpace& a, const std::vector<RatVector>& effects) {
  if (effects.empty()) throw Error("observable needs at least one effect");
  Observable obs;
  RatVector sum = zeros(a.dim());
  for (const auto& e : effects) {
    obs.effects.push_back(make_effect(a, e));
    sum = add(sum, e);
  }
  if (sum != a.unit()) throw Error("effects sum to " + to_string(sum) + ", not the unit");
  return obs;
}

EffectInterval effects_interval(const StateSpace& a) {
  EffectInterval iv;
  for (const auto& r : a.cone().rays()) {
    iv.constraints.push_back({r, 0});
    iv.constraints.push_back({negate(r), -dot(a.unit(), r)});
  }
  iv.vertices = polytope_vertices(a.dim(), iv.constraints);
  return iv;
}

StateSpace diamond_dual(const StateSpace& a, const RatVector& alpha0) {
  if (alpha0.size() != a.dim()) throw DimensionError("diamond_dual: state of wrong width");
  if (!is_interior(a.cone(), alpha0)) throw Error("diamond_dual: " + to_string(alpha0) + " is not interior");
  return StateSpace(dual_cone(a.cone()), alpha0);
}

bool verify_order_iso(const PolyhedralCone& source, const PolyhedralCone& target, const OrderIsoWitness& w) {
  const std::size_t n = source.dim(), m = source.rays().size();
  if (target.dim() != n || target.rays().size() != m) return false;
  if (w.matrix.rows() != n || w.matrix.cols() != n) return false;
  if (w.ray_bijection.size() != m || w.scales.size() != m) return false;
  std::vector<bool> hit(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = w.ray_bijection[i];
    if (j >= m || hit[j]) return false;
    hit[j] = true;
    if (sgn(w.scales[i]) <= 0) return false;
    if (w.matrix.apply(source.rays()[i]) != scale(target.rays()[j], w.scales[i])) return false;
  }
  return rank(w.matrix) == n;
}

namespace {

std::vector<std::size_t> ray_degrees(const PolyhedralCone& c) {
  std::vector<std::size_t> d;
  for (const auto& row : c.incidence()) d.push_back(std::count(row.begin(), row.end(), true));
  return d;
}

std::vector<std::size_t> facet_degrees(const PolyhedralCone& c) {
  std::vector<std::size_t> d(c.facets().size(), 0);
  for (const auto& row : c.incidence())
    for (std::size_t j = 0; j < row.size(); ++j) d[j] += row[j];
  return d;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class IsoSearch {
 public:
  IsoSearch(const PolyhedralCone& s, const PolyhedralCone& t, const IsoSearchOptions& opt)
      : s_(s), t_(t), opt_(opt), n_(s.dim()), m_(s.rays().size()) {}

  IsoSearchResult run() {
    if (t_.dim() != n_ || t_.rays().size() != m_ || t_.facets().size() != s_.facets().size()) return result_;
    sdeg_ = ray_degrees(s_);
    tdeg_ = ray_degrees(t_);
    if (sorted(sdeg_) != sorted(tdeg_)) return result_;
    if (sorted(facet_degrees(s_)) != sorted(facet_degrees(t_))) return result_;

    pivots_ = independent_subset(s_.rays(), n_);
    slot_.assign(m_, 0);
    is_pivot_.assign(m_, false);
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      is_pivot_[pivots_[k]] = true;
      slot_[pivots_[k]] = k;
    }
    std::size_t next = n_;
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_pivot_[i]) slot_[i] = next++;
    std::vector<RatVector> pivot_rays;
    for (auto p : pivots_) pivot_rays.push_back(s_.rays()[p]);
    pivot_inverse_ = *inverse(RatMatrix::from_columns(pivot_rays));
    coeff_.assign(m_, {});
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_pivot_[i]) coeff_[i] = pivot_inverse_.apply(s_.rays()[i]);
    if (opt_.transport) {
      if (opt_.transport->first.size() != n_ || opt_.transport->second.size() != n_)
        throw DimensionError("transport vectors of wrong width");
      alpha_coeff_ = pivot_inverse_.apply(opt_.transport->first);
    }

    sigma_.assign(m_, 0);
    used_.assign(m_, false);
    dfs(0, SpanBuilder(n_), {});
    return result_;
  }

 private:
  bool stop() const {
    if (opt_.max_results != 0 && result_.witnesses.size() >= opt_.max_results) return true;
    return opt_.max_nodes != 0 && result_.nodes >= opt_.max_nodes;
  }

  // Sign check on the unknowns fixed so far: a one-dimensional solution space
  // must be strictly positive (or strictly negative) in every assigned unknown.
  bool consistent(const std::vector<RatVector>& rows, std::size_t assigned) const {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < assigned; ++i) cols.push_back(slot_[i]);
    RatMatrix sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = rows[r][cols[c]];
    const auto ns = nullspace(sub);
    if (ns.empty()) return false;
    if (ns.size() > 1) return true;
    const int s0 = sgn(ns[0][0]);
    if (s0 == 0) return false;
    return std::all_of(ns[0].begin(), ns[0].end(), [&](const Rational& v) { return sgn(v) == s0; });
  }

  void dfs(std::size_t i, SpanBuilder images, std::vector<RatVector> rows) {
    if (stop()) {
      result_.exhausted = false;
      return;
    }
    ++result_.nodes;
    if (i == m_) {
      leaf(rows);
      return;
    }
    for (std::size_t j = 0; j < m_; ++j) {
      if (used_[j] || sdeg_[i] != tdeg_[j]) continue;
      const RatVector& tj = t_.rays()[j];
      sigma_[i] = j;
      if (is_pivot_[i]) {
        SpanBuilder next = images;
        if (!next.add(tj)) continue;
        used_[j] = true;
        dfs(i + 1, std::move(next), rows);
        used_[j] = false;
      } else {
        // M s_i = sum_k c_k lambda_k t_sigma(p_k) must equal mu_i t_j
        std::vector<RatVector> more = rows;
        for (std::size_t c = 0; c < n_; ++c) {
          RatVector row = zeros(m_);
          for (std::size_t k = 0; k < n_; ++k) row[k] = coeff_[i][k] * t_.rays()[sigma_[pivots_[k]]][c];
          row[slot_[i]] = -tj[c];
          more.push_back(std::move(row));
        }
        if (!consistent(more, i + 1)) continue;
        used_[j] = true;
        dfs(i + 1, images, std::move(more));
        used_[j] = false;
      }
      if (stop()) {
        result_.exhausted = false;
        return;
      }
    }
  }

  void leaf(const std::vector<RatVector>& rows) {
    LinearProgram lp(m_);
    for (const auto& r : rows) lp.add_eq(r, 0);
    for (std::size_t k = 0; k < m_; ++k) lp.add_gt(unit_vector(m_, k), 0);
    if (opt_.transport) {
      const RatVector& beta = opt_.transport->second;
      for (std::size_t c = 0; c < n_; ++c) {
        RatVector row = zeros(m_);
        for (std::size_t k = 0; k < n_; ++k) row[k] = alpha_coeff_[k] * t_.rays()[sigma_[pivots_[k]]][c];
        lp.add_eq(std::move(row), beta[c]);
      }
    } else {
      RatVector row = zeros(m_);
      for (std::size_t k = 0; k < n_; ++k) row[k] = 1;
      lp.add_eq(std::move(row), 1);
    }
    const auto out = lp_feasible(lp);
    if (out.status != LPStatus::feasible) return;
    RatVector z = out.point;
    if (!opt_.transport) z = scale(z, 1 / z[0]);

    std::vector<RatVector> cols;
    for (std::size_t k = 0; k < n_; ++k) cols.push_back(scale(t_.rays()[sigma_[pivots_[k]]], z[k]));
    OrderIsoWitness w;
    w.matrix = RatMatrix::from_columns(cols, n_) * pivot_inverse_;
    w.ray_bijection = sigma_;
    for (std::size_t i = 0; i < m_; ++i) w.scales.push_back(z[slot_[i]]);
    if (verify_order_iso(s_, t_, w)) result_.witnesses.push_back(std::move(w));
  }

  const PolyhedralCone& s_;
  const PolyhedralCone& t_;
  const IsoSearchOptions& opt_;
  const std::size_t n_, m_;
  std::vector<std::size_t> sdeg_, tdeg_;
  std::vector<std::size_t> pivots_, slot_;
  std::vector<bool> is_pivot_;
  RatMatrix pivot_inverse_;
  std::vector<RatVector> coeff_;
  RatVector alpha_coeff_;
  std::vector<std::size_t> sigma_;
  std::vector<bool> used_;
  IsoSearchResult result_;
};

}  // namespace

IsoSearchResult enumerate_order_isos(const PolyhedralCone& source, const PolyhedralCone& target,
                                     const IsoSearchOptions& options) {
  return IsoSearch(source, target, options).run();
}

std::optional<OrderIsoWitness> order_iso_search(const PolyhedralCone& source, const PolyhedralCone& target) {
  auto r = enumerate_order_isos(source, target);
  if (r.witnesses.empty()) return std::nullopt;
  return std::move(r.witnesses.front());
}

std::vector<OrderIsoWitness> automorphisms(const PolyhedralCone& c) {
  IsoSearchOptions opt;
  opt.max_results = 0;
  return enumerate_order_isos(c, c, opt).witnesses;
}

std::optional<OrderIsoWitness> is_weakly_self_dual(const StateSpace& a) {
  return order_iso_search(dual_cone(a.cone()), a.cone());
}

std::optional<OrderIsoWitness> transport_automorphism(const StateSpace& a, const RatVector& alpha,
                                                      const RatVector& beta) {
  if (alpha.size() != a.dim() || beta.size() != a.dim()) throw DimensionError("transport: state of wrong width");
  if (!is_interior(a.cone(), alpha)) throw Error("transport: " + to_string(alpha) + " is not interior");
  if (!is_interior(a.cone(), beta)) throw Error("transport: " + to_string(beta) + " is not interior");
  IsoSearchOptions opt;
  opt.transport = std::make_pair(alpha, beta);
  auto r = enumerate_order_isos(a.cone(), a.cone(), opt);
  if (r.witnesses.empty()) return std::nullopt;
  return std::move(r.witnesses.front());
}

const char* to_string(Homogeneity h) {
  switch (h) {
    case Homogeneity::yes: return "yes";
    case Homogeneity::no: return "no";
    case Homogeneity::unknown: return "unknown";
  }
  return "?";
}

HomogeneityVerdict is_homogeneous(const StateSpace& a) {
  HomogeneityVerdict v;
  v.alpha = a.barycenter();
  const auto pure = a.pure_states();
  if (is_simplicial(a.cone())) {
    v.beta = scale(add(v.alpha, pure[0]), Rational(1, 2));
    v.transport = transport_automorphism(a, v.alpha, v.beta);
    v.status = v.transport ? Homogeneity::yes : Homogeneity::unknown;
    return v;
  }
  // Move the barycenter halfway (then a quarter of the way) towards each pure state.
  for (const Rational& t : {Rational(1, 2), Rational(1, 4)}) {
    for (const auto& p : pure) {
      RatVector beta = add(scale(v.alpha, 1 - t), scale(p, t));
      if (!transport_automorphism(a, v.alpha, beta)) {
        v.beta = std::move(beta);
        v.status = Homogeneity::no;
        return v;
      }
    }
  }
  v.status = Homogeneity::unknown;
  return v;
}

}  // namespace conelab

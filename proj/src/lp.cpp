#include "conelab/lp.hpp"

#include <algorithm>

namespace conelab {

void LinearProgram::add_eq(RatVector row, Rational rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(std::move(rhs));
}

void LinearProgram::add_ge(RatVector row, Rational rhs) {
  ge_rows.push_back(std::move(row));
  ge_rhs.push_back(std::move(rhs));
}

void LinearProgram::add_le(RatVector row, Rational rhs) { add_ge(negate(row), -rhs); }

void LinearProgram::add_gt(RatVector row, Rational rhs) {
  gt_rows.push_back(std::move(row));
  gt_rhs.push_back(std::move(rhs));
}

void LinearProgram::validate() const {
  auto check = [&](const std::vector<RatVector>& rows, const RatVector& rhs, const char* what) {
    if (rows.size() != rhs.size()) throw DimensionError(std::string(what) + ": row/rhs count mismatch");
    for (const auto& r : rows) {
      if (r.size() != num_vars) {
        throw DimensionError(std::string(what) + " row has width " + std::to_string(r.size()) +
                             ", program has " + std::to_string(num_vars) + " variables");
      }
    }
  };
  check(eq_rows, eq_rhs, "equality");
  check(ge_rows, ge_rhs, "inequality");
  check(gt_rows, gt_rhs, "strict inequality");
  if (objective && objective->size() != num_vars) throw DimensionError("objective has wrong width");
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::feasible: return "feasible";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
    case LPStatus::optimal: return "optimal";
  }
  return "?";
}

namespace {

// min c.y  s.t.  A y = b, y >= 0
struct StandardForm {
  std::vector<RatVector> rows;
  RatVector rhs;
  RatVector cost;
  std::size_t cols = 0;
};

struct SimplexResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  RatVector y;
  RatVector ray;
};

class Tableau {
 public:
  Tableau(const StandardForm& sf) : cols_(sf.cols) {
    const std::size_t m = sf.rows.size();
    // structural | artificial | rhs
    width_ = cols_ + m + 1;
    t_.assign(m, RatVector(width_, Rational(0)));
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = sgn(sf.rhs[i]) < 0;
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = flip ? Rational(-sf.rows[i][j]) : sf.rows[i][j];
      t_[i][cols_ + i] = 1;
      t_[i][width_ - 1] = flip ? Rational(-sf.rhs[i]) : sf.rhs[i];
      basis_[i] = cols_ + i;
    }
    z_.assign(width_, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) z_[j] -= t_[i][j];
      z_[width_ - 1] -= t_[i][width_ - 1];
    }
  }

  // Runs Bland's rule over columns [0, limit). Returns false if unbounded,
  // with the entering column stored in unbounded_col_.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == t_.size()) {
        unbounded_col_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return -z_[width_ - 1]; }

  // After phase I: pivot artificials out of the basis or drop redundant rows,
  // then discard artificial columns and install the phase II cost.
  void start_phase_two(const RatVector& cost) {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < cols_) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < cols_ && sgn(t_[i][j]) == 0) ++j;
      if (j < cols_) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (auto& row : t_) {
      Rational rhs = row[width_ - 1];
      row.resize(cols_ + 1);
      row[cols_] = rhs;
    }
    width_ = cols_ + 1;
    z_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(t_[i][j]) != 0) z_[j] -= cb * t_[i][j];
      }
    }
  }

  RatVector solution() const {
    RatVector y = zeros(cols_);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (basis_[i] < cols_) y[basis_[i]] = t_[i][width_ - 1];
    }
    return y;
  }

  RatVector unbounded_ray() const {
    RatVector d = zeros(cols_);
    d[unbounded_col_] = 1;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (basis_[i] < cols_) d[basis_[i]] = -t_[i][unbounded_col_];
    }
    return d;
  }

  std::size_t cols() const { return cols_; }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) {
      if (sgn(x) != 0) x *= inv;
    }
    auto eliminate = [&](RatVector& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(t_[r][j]) != 0) row[j] -= f * t_[r][j];
      }
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(z_);
    basis_[r] = c;
  }

  std::size_t cols_;
  std::size_t width_;
  std::vector<RatVector> t_;
  RatVector z_;
  std::vector<std::size_t> basis_;
  std::size_t unbounded_col_ = 0;
};

SimplexResult simplex(const StandardForm& sf, bool optimize) {
  Tableau tab(sf);
  tab.run(sf.cols + sf.rows.size());
  SimplexResult res;
  if (sgn(tab.objective_value()) > 0) {
    res.status = SimplexResult::Status::infeasible;
    return res;
  }
  if (!optimize) {
    tab.start_phase_two(zeros(sf.cols));
    res.status = SimplexResult::Status::optimal;
    res.y = tab.solution();
    return res;
  }
  tab.start_phase_two(sf.cost);
  if (!tab.run(sf.cols)) {
    res.status = SimplexResult::Status::unbounded;
    res.y = tab.solution();
    res.ray = tab.unbounded_ray();
    return res;
  }
  res.status = SimplexResult::Status::optimal;
  res.y = tab.solution();
  return res;
}

// x = y+ - y-, one slack per >= row.
StandardForm to_standard(const LinearProgram& p) {
  const std::size_t n = p.num_vars;
  StandardForm sf;
  sf.cols = 2 * n + p.ge_rows.size();
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
    RatVector row = zeros(sf.cols);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = p.eq_rows[i][j];
      row[n + j] = -p.eq_rows[i][j];
    }
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(p.eq_rhs[i]);
  }
  for (std::size_t i = 0; i < p.ge_rows.size(); ++i) {
    RatVector row = zeros(sf.cols);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = p.ge_rows[i][j];
      row[n + j] = -p.ge_rows[i][j];
    }
    row[2 * n + i] = -1;
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(p.ge_rhs[i]);
  }
  sf.cost = zeros(sf.cols);
  if (p.objective) {
    for (std::size_t j = 0; j < n; ++j) {
      sf.cost[j] = -(*p.objective)[j];
      sf.cost[n + j] = (*p.objective)[j];
    }
  }
  return sf;
}

RatVector recover_x(const RatVector& y, std::size_t n) {
  RatVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
  return x;
}

LPOutcome solve_nonstrict(const LinearProgram& p, bool optimize);

// Solves the transposed system for a Motzkin certificate. Only called once the
// primal is known to be infeasible, so the alternative system is feasible.
FarkasCertificate find_certificate(const LinearProgram& p) {
  const std::size_t ne = p.eq_rows.size(), ng = p.ge_rows.size(), ns = p.gt_rows.size();
  LinearProgram alt(ne + ng + ns);
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    RatVector row = zeros(alt.num_vars);
    for (std::size_t i = 0; i < ne; ++i) row[i] = p.eq_rows[i][j];
    for (std::size_t i = 0; i < ng; ++i) row[ne + i] = p.ge_rows[i][j];
    for (std::size_t i = 0; i < ns; ++i) row[ne + ng + i] = p.gt_rows[i][j];
    alt.add_eq(std::move(row), 0);
  }
  RatVector value = zeros(alt.num_vars);
  for (std::size_t i = 0; i < ne; ++i) value[i] = p.eq_rhs[i];
  for (std::size_t i = 0; i < ng; ++i) value[ne + i] = p.ge_rhs[i];
  for (std::size_t i = 0; i < ns; ++i) value[ne + ng + i] = p.gt_rhs[i];
  RatVector normalized = value;
  for (std::size_t i = 0; i < ns; ++i) normalized[ne + ng + i] += 1;
  alt.add_eq(normalized, 1);
  alt.add_ge(value, 0);
  for (std::size_t i = ne; i < alt.num_vars; ++i) alt.add_ge(unit_vector(alt.num_vars, i), 0);

  const auto out = solve_nonstrict(alt, false);
  if (out.status != LPStatus::feasible) throw Error("internal: no certificate for an infeasible program");
  FarkasCertificate cert;
  cert.eq.assign(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(ne));
  cert.ge.assign(out.point.begin() + static_cast<std::ptrdiff_t>(ne),
                 out.point.begin() + static_cast<std::ptrdiff_t>(ne + ng));
  cert.gt.assign(out.point.begin() + static_cast<std::ptrdiff_t>(ne + ng), out.point.end());
  return cert;
}

LPOutcome solve_nonstrict(const LinearProgram& p, bool optimize) {
  const auto sf = to_standard(p);
  const auto res = simplex(sf, optimize);
  LPOutcome out;
  switch (res.status) {
    case SimplexResult::Status::infeasible:
      out.status = LPStatus::infeasible;
      break;
    case SimplexResult::Status::unbounded:
      out.status = LPStatus::unbounded;
      out.point = recover_x(res.y, p.num_vars);
      out.ray = recover_x(res.ray, p.num_vars);
      break;
    case SimplexResult::Status::optimal:
      out.status = optimize ? LPStatus::optimal : LPStatus::feasible;
      out.point = recover_x(res.y, p.num_vars);
      if (optimize) out.value = dot(*p.objective, out.point);
      break;
  }
  return out;
}

}  // namespace

LPOutcome lp_feasible(const LinearProgram& p) {
  p.validate();
  if (p.gt_rows.empty()) {
    LinearProgram q = p;
    q.objective.reset();
    auto out = solve_nonstrict(q, false);
    if (out.status == LPStatus::infeasible) out.farkas = find_certificate(q);
    return out;
  }
  // maximize a common gap d in [0, 1] with S x - d >= s
  const std::size_t n = p.num_vars;
  LinearProgram q(n + 1);
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i) q.add_eq(concat(p.eq_rows[i], {0}), p.eq_rhs[i]);
  for (std::size_t i = 0; i < p.ge_rows.size(); ++i) q.add_ge(concat(p.ge_rows[i], {0}), p.ge_rhs[i]);
  for (std::size_t i = 0; i < p.gt_rows.size(); ++i) q.add_ge(concat(p.gt_rows[i], {-1}), p.gt_rhs[i]);
  q.add_ge(unit_vector(n + 1, n), 0);
  q.add_le(unit_vector(n + 1, n), 1);
  q.objective = unit_vector(n + 1, n);
  const auto res = solve_nonstrict(q, true);
  LPOutcome out;
  if (res.status == LPStatus::optimal && sgn(res.value) > 0) {
    out.status = LPStatus::feasible;
    out.point.assign(res.point.begin(), res.point.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
  }
  out.status = LPStatus::infeasible;
  out.farkas = find_certificate(p);
  return out;
}

LPOutcome lp_optimize(const LinearProgram& p) {
  p.validate();
  if (!p.objective) throw Error("lp_optimize: program has no objective");
  if (!p.gt_rows.empty()) throw Error("lp_optimize: strict rows are only allowed in feasibility mode");
  auto out = solve_nonstrict(p, true);
  if (out.status == LPStatus::infeasible) {
    LinearProgram q = p;
    q.objective.reset();
    out.farkas = find_certificate(q);
  }
  return out;
}

bool satisfies(const LinearProgram& p, const RatVector& x) {
  if (x.size() != p.num_vars) return false;
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i)
    if (dot(p.eq_rows[i], x) != p.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < p.ge_rows.size(); ++i)
    if (dot(p.ge_rows[i], x) < p.ge_rhs[i]) return false;
  for (std::size_t i = 0; i < p.gt_rows.size(); ++i)
    if (dot(p.gt_rows[i], x) <= p.gt_rhs[i]) return false;
  return true;
}

bool verify_farkas(const LinearProgram& p, const FarkasCertificate& c) {
  if (c.eq.size() != p.eq_rows.size() || c.ge.size() != p.ge_rows.size() ||
      c.gt.size() != p.gt_rows.size())
    return false;
  RatVector combo = zeros(p.num_vars);
  Rational value = 0;
  bool strict_used = false;
  auto accumulate = [&](const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& y,
                        bool signed_free, bool strict) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!signed_free && sgn(y[i]) < 0) return false;
      if (sgn(y[i]) == 0) continue;
      if (strict) strict_used = true;
      for (std::size_t j = 0; j < p.num_vars; ++j) combo[j] += y[i] * rows[i][j];
      value += y[i] * rhs[i];
    }
    return true;
  };
  if (!accumulate(p.eq_rows, p.eq_rhs, c.eq, true, false)) return false;
  if (!accumulate(p.ge_rows, p.ge_rhs, c.ge, false, false)) return false;
  if (!accumulate(p.gt_rows, p.gt_rhs, c.gt, false, true)) return false;
  if (!is_zero(combo)) return false;
  return sgn(value) > 0 || (sgn(value) == 0 && strict_used);
}

bool verify_unbounded_ray(const LinearProgram& p, const RatVector& ray) {
  if (!p.objective || ray.size() != p.num_vars) return false;
  for (const auto& r : p.eq_rows)
    if (sgn(dot(r, ray)) != 0) return false;
  for (const auto& r : p.ge_rows)
    if (sgn(dot(r, ray)) < 0) return false;
  return sgn(dot(*p.objective, ray)) > 0;
}

bool verify_outcome(const LinearProgram& p, const LPOutcome& o) {
  switch (o.status) {
    case LPStatus::feasible: return satisfies(p, o.point);
    case LPStatus::optimal: return satisfies(p, o.point) && dot(*p.objective, o.point) == o.value;
    case LPStatus::unbounded: return satisfies(p, o.point) && verify_unbounded_ray(p, o.ray);
    case LPStatus::infeasible: return verify_farkas(p, o.farkas);
  }
  return false;
}

}  // namespace conelab

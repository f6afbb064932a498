#include "conelab/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "conelab/linalg.hpp"

namespace conelab {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatVector& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json to_json(const std::vector<RatVector>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(to_json(v));
  return j;
}

Json to_json(const RatMatrix& m) { return to_json(m.row_list()); }

Json to_json(const FarkasCertificate& f) { return Json{{"eq", to_json(f.eq)}, {"ge", to_json(f.ge)}, {"gt", to_json(f.gt)}}; }

Json to_json(const OrderIsoWitness& w) {
  Json scales = Json::array();
  for (const auto& s : w.scales) scales.push_back(to_string(s));
  return Json{{"matrix", to_json(w.matrix)}, {"ray_bijection", w.ray_bijection}, {"scales", scales}};
}

Rational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

RatVector vector_from_json(const Json& j) {
  RatVector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

std::vector<RatVector> vectors_from_json(const Json& j) {
  std::vector<RatVector> out;
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

RatMatrix matrix_from_json(const Json& j) {
  const auto rows = vectors_from_json(j);
  return RatMatrix::from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

FarkasCertificate farkas_from_json(const Json& j) {
  return {vector_from_json(j.at("eq")), vector_from_json(j.at("ge")), vector_from_json(j.at("gt"))};
}

OrderIsoWitness witness_from_json(const Json& j) {
  OrderIsoWitness w;
  w.matrix = matrix_from_json(j.at("matrix"));
  w.ray_bijection = j.at("ray_bijection").get<std::vector<std::size_t>>();
  w.scales = vector_from_json(j.at("scales"));
  return w;
}

namespace {

std::string fmt(const RatVector& v) { return to_string(v); }

std::string fmt(const RatMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) s += "  " + to_string(m.row(i)) + "\n";
  return s;
}

void need_args(const std::vector<std::string>& args, std::size_t n, const std::string& usage) {
  if (args.size() != n) throw Error("usage: " + usage);
}

void check_ray_limit(const StateSpace& a, const CommandOptions& o) {
  if (a.cone().rays().size() > o.max_rays || a.cone().facets().size() > o.max_rays) {
    throw Error("cone has more than " + std::to_string(o.max_rays) + " rays or facets (raise --max-rays)");
  }
}

Json ensemble_json(const Ensemble& e) { return to_json(e.parts); }

// ---- command bodies: fill verdict/certificates, return exit code and text ----

int cmd_check_steering(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
                       Json& certs, std::string& text) {
  need_args(args, 1, "check-steering STATE");
  const auto& w = t.state(args[0]);
  SteeringOptions so;
  so.depth = o.depth;
  const auto v = decide_steering(w, so);
  verdict = {{"status", to_string(v.status)}, {"depth", v.depth}, {"requested_depth", o.depth}};
  Json lifted = Json::array();
  for (const auto& le : v.lifted) lifted.push_back({{"ensemble", ensemble_json(le.ensemble)}, {"effects", to_json(le.effects)}});
  certs["lifted"] = lifted;
  std::ostringstream s;
  s << "state " << args[0] << ": " << to_string(v.status);
  if (v.status == SteeringStatus::steering_up_to) s << "(" << v.depth << ")";
  s << "\n";
  s << "lifted " << v.lifted.size() << " extremal ensembles\n";
  if (v.counterexample) {
    certs["counterexample"] = ensemble_json(*v.counterexample);
    certs["farkas"] = to_json(v.failed_lift->farkas);
    s << "counterexample ensemble:";
    for (const auto& p : v.counterexample->parts) s << " " << fmt(p);
    s << "\nno observable realizes it (Farkas certificate in --json output)\n";
  }
  text = s.str();
  switch (v.status) {
    case SteeringStatus::steering_up_to: return exit_positive;
    case SteeringStatus::not_steering: return exit_negative;
    default: return exit_undecided;
  }
}

int cmd_self_dual(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
                  Json& certs, std::string& text) {
  need_args(args, 1, "self-dual SPACE");
  const auto& a = t.space(args[0]);
  check_ray_limit(a, o);
  const auto w = is_weakly_self_dual(a);
  verdict = {{"weakly_self_dual", w.has_value()}};
  text = "space " + args[0] + ": " + (w ? "weakly self-dual" : "not weakly self-dual") + "\n";
  if (w) {
    certs["witness"] = to_json(*w);
    text += "order isomorphism from the dual cone:\n" + fmt(w->matrix);
  }
  return w ? exit_positive : exit_negative;
}

int cmd_homogeneous(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
                    Json& certs, std::string& text) {
  need_args(args, 1, "homogeneous SPACE");
  const auto& a = t.space(args[0]);
  check_ray_limit(a, o);
  const auto v = is_homogeneous(a);
  verdict = {{"homogeneous", to_string(v.status)}};
  certs["alpha"] = to_json(v.alpha);
  certs["beta"] = to_json(v.beta);
  if (v.transport) certs["transport"] = to_json(*v.transport);
  text = "space " + args[0] + ": homogeneous = " + to_string(v.status) + "\n";
  if (v.status == Homogeneity::no)
    text += "no automorphism maps " + fmt(v.alpha) + " to " + fmt(v.beta) + "\n";
  else if (v.transport)
    text += "automorphism mapping " + fmt(v.alpha) + " to " + fmt(v.beta) + ":\n" + fmt(v.transport->matrix);
  switch (v.status) {
    case Homogeneity::yes: return exit_positive;
    case Homogeneity::no: return exit_negative;
    default: return exit_undecided;
  }
}

int cmd_purify(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
               Json& certs, std::string& text) {
  need_args(args, 2, "purify SPACE VECTOR");
  const auto& a = t.space(args[0]);
  check_ray_limit(a, o);
  const RatVector alpha = parse_vector(args[1]);
  if (alpha.size() != a.dim()) throw Error("state has " + std::to_string(alpha.size()) + " entries, space has dimension " + std::to_string(a.dim()));
  const auto w = purify(a, alpha);
  verdict = {{"found", w.has_value()}};
  certs["alpha"] = to_json(alpha);
  if (w) {
    certs["matrix"] = to_json(w->matrix());
    text = "isomorphism state with B-marginal " + fmt(alpha) + ":\n" + fmt(w->matrix());
  } else {
    text = "no isomorphism-state purification of " + fmt(alpha) + " found\n";
  }
  return w ? exit_positive : exit_negative;
}

int cmd_tensor(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
               Json& certs, std::string& text) {
  need_args(args, 2, "tensor A B --kind min|max");
  if (o.kind != "min" && o.kind != "max") throw Error("--kind must be 'min' or 'max'");
  const auto& a = t.space(args[0]);
  const auto& b = t.space(args[1]);
  const auto ts = o.kind == "min" ? min_tensor(a, b) : max_tensor(a, b);
  const auto& c = ts.space.cone();
  verdict = {{"kind", o.kind}, {"dim", c.dim()}, {"rays", c.rays().size()}, {"facets", c.facets().size()}};
  certs["rays"] = to_json(c.rays());
  certs["facets"] = to_json(c.facets());
  certs["unit"] = to_json(ts.space.unit());
  std::ostringstream s;
  s << args[0] << " (x)" << o.kind << " " << args[1] << ": dimension " << c.dim() << ", " << c.rays().size()
    << " rays, " << c.facets().size() << " facets\n";
  for (const auto& r : c.rays()) s << "  ray " << fmt(r) << "\n";
  text = s.str();
  return exit_positive;
}

int cmd_pure(const Theory& t, const std::vector<std::string>& args, const CommandOptions&, Json& verdict, Json& certs,
             std::string& text) {
  need_args(args, 1, "pure STATE");
  const auto& w = t.state(args[0]);
  const auto r = is_pure_in_max(w);
  verdict = {{"pure", r.extremal}};
  text = "state " + args[0] + ": " + (r.extremal ? "pure" : "not pure") + " in the maximal tensor product\n";
  if (r.psi) {
    certs["psi"] = to_json(*r.psi);
    text += "decomposition: psi =\n" + fmt(*r.psi) + "remainder =\n" + fmt(w.matrix() - *r.psi);
  }
  return r.extremal ? exit_positive : exit_negative;
}

int cmd_section(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict,
                Json& certs, std::string& text) {
  need_args(args, 1, "section STATE");
  const auto& w = t.state(args[0]);
  SectionOptions so;
  so.fix_origin = !o.affine;
  const auto s = affine_section_search(w, so);
  verdict = {{"exists", s.exists}, {"solution_dimension", s.solution_dimension}, {"affine", o.affine}};
  certs["interval_vertices"] = to_json(s.interval_vertices);
  std::ostringstream out;
  out << "state " << args[0] << ": " << (s.exists ? "section exists" : "no section") << "\n";
  if (s.exists) {
    certs["images"] = to_json(s.images);
    certs["linear"] = to_json(s.linear);
    certs["offset"] = to_json(s.offset);
    out << "dimension of the set of sections: " << s.solution_dimension << "\n";
    for (std::size_t v = 0; v < s.images.size(); ++v)
      out << "  " << fmt(s.interval_vertices[v]) << " -> " << fmt(s.images[v]) << "\n";
  } else {
    certs["farkas"] = to_json(s.farkas);
  }
  text = out.str();
  return s.exists ? exit_positive : exit_negative;
}

std::vector<RatVector> scan_grid(const StateSpace& a, const CommandOptions& o) {
  auto grid = state_grid(a, o.grid);
  if (o.random_points > 0) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> weight(1, 9);
    const auto pure = a.pure_states();
    for (std::size_t k = 0; k < o.random_points; ++k) {
      RatVector p = zeros(a.dim());
      Rational total = 0;
      std::vector<int> ws;
      for (std::size_t i = 0; i < pure.size(); ++i) {
        ws.push_back(weight(rng));
        total += ws.back();
      }
      for (std::size_t i = 0; i < pure.size(); ++i) p = add(p, scale(pure[i], ws[i] / total));
      grid.push_back(std::move(p));
    }
  }
  return grid;
}

int cmd_scan(const Theory& t, const std::vector<std::string>& args, const CommandOptions& o, Json& verdict, Json& certs,
             std::string& text) {
  need_args(args, 1, "scan SPACE");
  const auto& a = t.space(args[0]);
  check_ray_limit(a, o);
  SteeringOptions so;
  so.depth = o.depth;
  const auto rep = universal_self_steering_scan(a, scan_grid(a, o), so);
  verdict = {{"interior_total", rep.interior_total}, {"interior_steered", rep.interior_steered},
             {"all_steered", rep.all_steered}, {"homogeneous", to_string(rep.homogeneous)},
             {"weakly_self_dual", rep.weakly_self_dual}, {"consistent", rep.consistent}};
  Json entries = Json::array();
  std::ostringstream s;
  s << "space " << args[0] << ": " << rep.interior_steered << "/" << rep.interior_total
    << " interior grid states steered; homogeneous = " << to_string(rep.homogeneous)
    << ", weakly self-dual = " << (rep.weakly_self_dual ? "yes" : "no") << ", consistent = "
    << (rep.consistent ? "yes" : "no") << "\n";
  for (const auto& e : rep.entries) {
    Json je = {{"alpha", to_json(e.alpha)}, {"method", e.method}, {"steered", e.steered}};
    if (e.state) je["matrix"] = to_json(e.state->matrix());
    entries.push_back(je);
    s << "  " << fmt(e.alpha) << ": " << e.method << (e.steered ? ", steered" : ", not steered") << "\n";
  }
  certs["entries"] = entries;
  text = s.str();
  return rep.consistent ? exit_positive : exit_negative;
}

using CommandFn = int (*)(const Theory&, const std::vector<std::string>&, const CommandOptions&, Json&, Json&,
                          std::string&);

CommandFn find_command(const std::string& name) {
  if (name == "check-steering") return cmd_check_steering;
  if (name == "self-dual") return cmd_self_dual;
  if (name == "homogeneous") return cmd_homogeneous;
  if (name == "purify") return cmd_purify;
  if (name == "tensor") return cmd_tensor;
  if (name == "pure") return cmd_pure;
  if (name == "section") return cmd_section;
  if (name == "scan") return cmd_scan;
  return nullptr;
}

Json options_json(const CommandOptions& o) {
  return {{"depth", o.depth}, {"max_rays", o.max_rays}, {"grid", o.grid}, {"seed", o.seed},
          {"random_points", o.random_points}, {"affine", o.affine}, {"kind", o.kind}};
}

CommandOptions options_from_json(const Json& j) {
  CommandOptions o;
  o.depth = j.at("depth").get<int>();
  o.max_rays = j.at("max_rays").get<std::size_t>();
  o.grid = j.at("grid").get<int>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.random_points = j.at("random_points").get<std::size_t>();
  o.affine = j.at("affine").get<bool>();
  o.kind = j.at("kind").get<std::string>();
  return o;
}

}  // namespace

CommandResult run_command(const std::string& command, const std::vector<std::string>& args,
                          const std::string& theory_text, const CommandOptions& options) {
  const CommandFn fn = find_command(command);
  if (!fn) throw Error("unknown command '" + command + "'");
  const Theory theory = parse_theory(theory_text);
  CommandResult r;
  Json verdict = Json::object(), certs = Json::object();
  r.exit_code = fn(theory, args, options, verdict, certs, r.text);
  r.report = {{"schema", kReportSchema},
              {"command", command},
              {"args", args},
              {"options", options_json(options)},
              {"inputs", {{"theory", theory_text}, {"sha256", sha256_hex(theory_text)}}},
              {"verdict", verdict},
              {"certificates", certs},
              {"exit_code", r.exit_code}};
  return r;
}

namespace {

void check(VerifyResult& v, bool cond, const std::string& msg) {
  if (!cond) {
    v.ok = false;
    v.messages.push_back("FAILED: " + msg);
  } else {
    v.messages.push_back("ok: " + msg);
  }
}

void verify_check_steering(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& w = t.state(rep.at("args").at(0).get<std::string>());
  const auto& verdict = rep.at("verdict");
  const auto& certs = rep.at("certificates");
  const std::string status = verdict.at("status").get<std::string>();
  std::set<std::vector<RatVector>> lifted;
  bool all_ok = true;
  for (const auto& le : certs.at("lifted")) {
    Ensemble e{vectors_from_json(le.at("ensemble"))};
    const auto effects = vectors_from_json(le.at("effects"));
    bool ok = true;
    try {
      make_ensemble(w.space_b(), marginal_b(w).vector, e.parts);
    } catch (const Error&) {
      ok = false;
    }
    ok = ok && verify_observable_lift(w, e, effects);
    all_ok = all_ok && ok;
    lifted.insert(e.parts);
  }
  check(v, all_ok, "every lifted ensemble is realized by its observable");
  if (status == "steering_up_to") {
    const int depth = verdict.at("depth").get<int>();
    bool covered = true;
    for (int k = 2; k <= depth; ++k)
      for (const auto& e : extremal_ensembles(w, k)) covered = covered && lifted.count(e.parts) > 0;
    check(v, covered, "lifted ensembles cover every extremal ensemble up to length " + std::to_string(depth));
  } else if (status == "not_steering") {
    Ensemble e{vectors_from_json(certs.at("counterexample"))};
    bool valid = true;
    try {
      make_ensemble(w.space_b(), marginal_b(w).vector, e.parts);
    } catch (const Error&) {
      valid = false;
    }
    check(v, valid, "counterexample is an ensemble for the B-marginal");
    if (valid) {
      const auto program = lift_ensemble(w, e).program;
      check(v, verify_farkas(program, farkas_from_json(certs.at("farkas"))),
            "Farkas certificate proves the counterexample cannot be lifted");
    }
  }
}

void verify_self_dual(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& a = t.space(rep.at("args").at(0).get<std::string>());
  if (rep.at("verdict").at("weakly_self_dual").get<bool>()) {
    check(v, verify_order_iso(dual_cone(a.cone()), a.cone(), witness_from_json(rep.at("certificates").at("witness"))),
          "witness maps the dual cone onto the cone");
  } else {
    check(v, !is_weakly_self_dual(a).has_value(), "exhaustive search finds no order isomorphism");
  }
}

void verify_homogeneous(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& a = t.space(rep.at("args").at(0).get<std::string>());
  const auto& certs = rep.at("certificates");
  const std::string status = rep.at("verdict").at("homogeneous").get<std::string>();
  const RatVector alpha = vector_from_json(certs.at("alpha"));
  const RatVector beta = vector_from_json(certs.at("beta"));
  if (status == "yes") {
    const auto w = witness_from_json(certs.at("transport"));
    check(v, verify_order_iso(a.cone(), a.cone(), w), "transport matrix is an automorphism");
    check(v, w.matrix.apply(alpha) == beta, "transport matrix maps alpha to beta");
    check(v, is_simplicial(a.cone()), "cone is simplicial");
  } else if (status == "no") {
    check(v, is_interior(a.cone(), alpha) && is_interior(a.cone(), beta), "alpha and beta are interior");
    check(v, !transport_automorphism(a, alpha, beta).has_value(), "no automorphism maps alpha to beta");
  }
}

void verify_purify(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& a = t.space(rep.at("args").at(0).get<std::string>());
  const auto& certs = rep.at("certificates");
  const RatVector alpha = vector_from_json(certs.at("alpha"));
  if (rep.at("verdict").at("found").get<bool>()) {
    const BipartiteState w(a, a, matrix_from_json(certs.at("matrix")));
    check(v, is_isomorphism_state(w).has_value(), "state is an isomorphism state");
    check(v, marginal_b(w).vector == alpha, "B-marginal equals the requested state");
  } else {
    check(v, !purify(a, alpha).has_value(), "search again finds no purification");
  }
}

void verify_tensor(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& args = rep.at("args");
  const auto& a = t.space(args.at(0).get<std::string>());
  const auto& b = t.space(args.at(1).get<std::string>());
  const std::string kind = rep.at("verdict").at("kind").get<std::string>();
  const auto ts = kind == "min" ? min_tensor(a, b) : max_tensor(a, b);
  const auto& certs = rep.at("certificates");
  check(v, vectors_from_json(certs.at("rays")) == ts.space.cone().rays(), "ray list recomputes exactly");
  check(v, vectors_from_json(certs.at("facets")) == ts.space.cone().facets(), "facet list recomputes exactly");
}

void verify_pure(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& w = t.state(rep.at("args").at(0).get<std::string>());
  if (rep.at("verdict").at("pure").get<bool>()) {
    check(v, is_pure_in_max(w).extremal, "extremality programs again have optimum 0");
  } else {
    const RatMatrix psi = matrix_from_json(rep.at("certificates").at("psi"));
    check(v, verify_decomposition(w.matrix(), psi, dual_cone(w.space_a().cone()), w.space_b().cone()),
          "psi and the remainder are positive and not proportional to the state");
  }
}

void verify_section_report(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto& w = t.state(rep.at("args").at(0).get<std::string>());
  const auto& certs = rep.at("certificates");
  SectionOptions so;
  so.fix_origin = !rep.at("verdict").at("affine").get<bool>();
  if (rep.at("verdict").at("exists").get<bool>()) {
    SectionResult s;
    s.exists = true;
    s.interval_vertices = vectors_from_json(certs.at("interval_vertices"));
    s.images = vectors_from_json(certs.at("images"));
    s.linear = matrix_from_json(certs.at("linear"));
    s.offset = vector_from_json(certs.at("offset"));
    check(v, same_point_set(s.interval_vertices, order_interval(w.space_b(), marginal_b(w).vector)),
          "interval vertices recompute exactly");
    check(v, verify_section(w, s), "section values are effects mapping back to each vertex");
  } else {
    const auto program = affine_section_search(w, so).program;
    check(v, verify_farkas(program, farkas_from_json(certs.at("farkas"))), "Farkas certificate proves no section exists");
  }
}

void verify_scan(VerifyResult& v, const Theory& t, const Json& rep) {
  const auto o = options_from_json(rep.at("options"));
  Json verdict, certs;
  std::string text;
  cmd_scan(t, rep.at("args").get<std::vector<std::string>>(), o, verdict, certs, text);
  check(v, verdict == rep.at("verdict"), "scan summary recomputes exactly");
  const auto& a = t.space(rep.at("args").at(0).get<std::string>());
  bool ok = true;
  for (const auto& e : rep.at("certificates").at("entries")) {
    if (!e.contains("matrix")) continue;
    const BipartiteState w(a, a, matrix_from_json(e.at("matrix")));
    ok = ok && marginal_b(w).vector == vector_from_json(e.at("alpha"));
  }
  check(v, ok, "every constructed state has the scanned marginal");
}

}  // namespace

VerifyResult verify_report(const Json& report) {
  VerifyResult v;
  v.ok = true;
  try {
    if (report.at("schema").get<std::string>() != kReportSchema) {
      check(v, false, "schema is " + std::string(kReportSchema));
      return v;
    }
    const std::string text = report.at("inputs").at("theory").get<std::string>();
    check(v, sha256_hex(text) == report.at("inputs").at("sha256").get<std::string>(), "input digest matches");
    const Theory t = parse_theory(text);
    const std::string cmd = report.at("command").get<std::string>();
    if (cmd == "check-steering") verify_check_steering(v, t, report);
    else if (cmd == "self-dual") verify_self_dual(v, t, report);
    else if (cmd == "homogeneous") verify_homogeneous(v, t, report);
    else if (cmd == "purify") verify_purify(v, t, report);
    else if (cmd == "tensor") verify_tensor(v, t, report);
    else if (cmd == "pure") verify_pure(v, t, report);
    else if (cmd == "section") verify_section_report(v, t, report);
    else if (cmd == "scan") verify_scan(v, t, report);
    else check(v, false, "known command '" + cmd + "'");
  } catch (const std::exception& e) {
    check(v, false, std::string("report is well formed (") + e.what() + ")");
  }
  return v;
}

}  // namespace conelab

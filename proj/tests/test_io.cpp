#include "conelab/report.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conelab;
using namespace testutil;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_theory(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool contains_text(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("fixture text round-trips byte for byte") {
  CHECK(serialize_theory(parse_theory_file(fixture_text())) == fixture_text());
  const auto& lib = fx();
  CHECK(lib.space_names().size() == 10);
  CHECK(lib.state("cube_hexagon_pairs").matrix().rows() == 3);
}

TEST_CASE("serialization is canonical") {
  const std::string messy =
      "# a comment\n"
      "space s\n"
      "    dim 2\n"
      "  ray 2/4 0\n"
      "ray 0 1\n"
      "  unit 1 1\n"
      "end\n";
  const std::string canon = serialize_theory(parse_theory_file(messy));
  CHECK(canon == "space s\n  dim 2\n  ray 1/2 0\n  ray 0 1\n  unit 1 1\nend\n");
  CHECK(serialize_theory(parse_theory_file(canon)) == canon);
}

TEST_CASE("parse_vector accepts commas and brackets") {
  CHECK(parse_vector("[1, 2/3, -4]") == V("1 2/3 -4"));
  CHECK(parse_vector("1,2") == V("1 2"));
  CHECK_THROWS_AS(parse_vector("1 x"), ParseError);
}

TEST_CASE("errors carry the offending line") {
  CHECK(contains_text(error_of("space s\n  dim 2\n  ray 1 q\nend\n"), "line 3"));
  CHECK(contains_text(error_of("space s\n  dim 2\n  ray 1 0\n"), "line"));
  CHECK(contains_text(error_of("spice s\nend\n"), "line 1"));
  CHECK(contains_text(error_of("space s\n  dim 2\n  ray 1 0 0\n  unit 1 1\nend\n"), "line 3"));
  CHECK(contains_text(error_of("\n\nspace s\n  dim 2\n  ray 1 0\n  ray -1 0\n  ray 0 1\n  unit 1 1\nend\n"), "line 3"));
  CHECK(contains_text(error_of(fixture_text() + "\nstate z\n  A bit\n  B nope\n  row 1 0\n  row 0 1\nend\n"), "nope"));
  const std::string dup = "space s\n  dim 1\n  ray 1\n  unit 1\nend\nspace s\n  dim 1\n  ray 1\n  unit 1\nend\n";
  CHECK(contains_text(error_of(dup), "line 6"));
  CHECK_THROWS_AS(fx().space("missing"), Error);
}

TEST_CASE("non-positive states are rejected at their block") {
  const std::string text = fixture_text() + "\nstate neg\n  A bit\n  B bit\n  row 1 -1\n  row 0 1\nend\n";
  const std::string msg = error_of(text);
  CHECK(contains_text(msg, "neg"));
}

TEST_CASE("reports carry the input digest and verify") {
  const auto r = run_command("check-steering", {"paper_sec5_nonsteering"}, fixture_text(), {});
  CHECK(r.exit_code == exit_negative);
  CHECK(r.report.at("schema") == kReportSchema);
  CHECK(r.report.at("inputs").at("sha256") == sha256_hex(fixture_text()));
  CHECK(!r.report.contains("wall_time_ms"));
  CHECK(verify_report(r.report).ok);

  Json tampered = r.report;
  tampered["inputs"]["sha256"] = sha256_hex("x");
  CHECK_FALSE(verify_report(tampered).ok);
}

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("every command produces a verifiable report") {
  struct Case {
    std::string cmd;
    std::vector<std::string> args;
    int code;
  };
  CommandOptions affine;
  affine.affine = true;
  const std::vector<Case> cases = {
      {"check-steering", {"classical_correlated_2"}, exit_positive},
      {"check-steering", {"cube_hexagon_pairs"}, exit_positive},
      {"self-dual", {"square_space"}, exit_positive},
      {"self-dual", {"cube_space"}, exit_negative},
      {"homogeneous", {"square_space"}, exit_negative},
      {"homogeneous", {"trit"}, exit_positive},
      {"purify", {"trit", "1/2 1/4 1/4"}, exit_positive},
      {"purify", {"square_space", "1 1/2 0"}, exit_negative},
      {"tensor", {"bit", "square_space"}, exit_positive},
      {"pure", {"bit_scaled_state"}, exit_negative},
      {"section", {"square_unique_section"}, exit_positive},
      {"section", {"cube_hexagon_pairs"}, exit_negative},
      {"scan", {"trit"}, exit_positive},
  };
  for (const auto& c : cases) {
    CAPTURE(c.cmd);
    CAPTURE(c.args.front());
    CommandOptions o;
    o.depth = 2;
    const auto r = run_command(c.cmd, c.args, fixture_text(), o);
    CHECK(r.exit_code == c.code);
    const auto v = verify_report(r.report);
    CHECK(v.ok);
    if (!v.ok)
      for (const auto& m : v.messages) MESSAGE(m);
    // survives a trip through text
    CHECK(verify_report(Json::parse(r.report.dump())).ok);
  }
}

TEST_CASE("bad arguments are input errors") {
  CHECK_THROWS_AS(run_command("check-steering", {"nope"}, fixture_text(), {}), Error);
  CHECK_THROWS_AS(run_command("purify", {"trit"}, fixture_text(), {}), Error);
  CHECK_THROWS_AS(run_command("frobnicate", {}, fixture_text(), {}), Error);
  CommandOptions tight;
  tight.max_rays = 4;
  CHECK_THROWS_AS(run_command("self-dual", {"hexagon_space"}, fixture_text(), tight), Error);
}

// conelab: decision procedures for polyhedral state spaces from the command line.
//
// Exit codes: 0 positive verdict, 1 negative verdict, 2 input error, 3 undecided.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conelab/report.hpp"

using namespace conelab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Common {
  std::string file;
  bool json = false;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-f,--file", c.file, "theory file (default: built-in fixture library)");
  sub->add_flag("--json", c.json, "print a machine-readable report");
  sub->add_flag("--timing", c.timing, "include wall time in the JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for polyhedral abstract state spaces"};
  app.require_subcommand(1);

  Common common;
  CommandOptions opts;
  std::vector<std::string> args;
  std::string report_path;

  struct Spec {
    const char* name;
    const char* help;
    std::vector<const char*> positional;
  };
  const std::vector<Spec> specs = {
      {"check-steering", "decide whether a state steers its B-marginal", {"STATE"}},
      {"self-dual", "search for an order isomorphism from the dual cone onto the cone", {"SPACE"}},
      {"homogeneous", "decide homogeneity of a space", {"SPACE"}},
      {"purify", "build an isomorphism state with a given interior marginal", {"SPACE", "VECTOR"}},
      {"tensor", "minimal or maximal tensor product of two spaces", {"A", "B"}},
      {"pure", "decide purity of a state in the maximal tensor product", {"STATE"}},
      {"section", "search for a section of the state map over [0, marginal]", {"STATE"}},
      {"scan", "universal self-steering scan over a grid of states", {"SPACE"}},
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, common);
    sub->add_option("args", args, "positional arguments")->required()->expected(static_cast<int>(s.positional.size()));
    std::string name = s.name;
    if (name == "check-steering" || name == "scan")
      sub->add_option("--depth", opts.depth, "largest ensemble length to check")->capture_default_str();
    if (name == "self-dual" || name == "homogeneous" || name == "purify" || name == "scan")
      sub->add_option("--max-rays", opts.max_rays, "refuse isomorphism searches on larger cones")->capture_default_str();
    if (name == "tensor")
      sub->add_option("--kind", opts.kind, "min or max")->check(CLI::IsMember({"min", "max"}))->capture_default_str();
    if (name == "section") sub->add_flag("--affine", opts.affine, "allow affine sections (sigma(0) free)");
    if (name == "scan") {
      sub->add_option("--grid", opts.grid, "grid denominator")->capture_default_str();
      sub->add_option("--random", opts.random_points, "extra random interior states")->capture_default_str();
      sub->add_option("--seed", opts.seed, "seed for --random")->capture_default_str();
    }
    subs.emplace_back(name, sub);
  }
  CLI::App* verify = app.add_subcommand("verify", "re-check the certificates in a JSON report");
  verify->add_option("report", report_path, "report file")->required();
  CLI::App* fixtures = app.add_subcommand("fixtures", "print the built-in fixture library");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input_error;
  }

  if (fixtures->parsed()) {
    std::cout << fixture_text();
    return 0;
  }

  if (verify->parsed()) {
    try {
      const Json rep = Json::parse(read_file(report_path));
      const auto v = verify_report(rep);
      for (const auto& m : v.messages) std::cout << m << "\n";
      std::cout << (v.ok ? "report verified" : "report FAILED verification") << "\n";
      return v.ok ? exit_positive : exit_negative;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_input_error;
    }
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    const std::string text = common.file.empty() ? fixture_text() : read_file(common.file);
    const auto start = std::chrono::steady_clock::now();
    auto result = run_command(command, args, text, opts);
    if (common.json) {
      if (common.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result.report["wall_time_ms"] = ms;
      }
      std::cout << result.report.dump(2) << "\n";
    } else {
      std::cout << result.text;
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  }
}

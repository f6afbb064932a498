#pragma once

// JSON reports for the command-line tool and their re-verification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conelab/theory.hpp"

namespace conelab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "conelab-report/1";

enum ExitCode : int { exit_positive = 0, exit_negative = 1, exit_input_error = 2, exit_undecided = 3 };

std::string sha256_hex(const std::string& data);

Json to_json(const Rational& q);
Json to_json(const RatVector& v);
Json to_json(const std::vector<RatVector>& vs);
Json to_json(const RatMatrix& m);
Json to_json(const FarkasCertificate& f);
Json to_json(const OrderIsoWitness& w);

Rational rational_from_json(const Json& j);
RatVector vector_from_json(const Json& j);
std::vector<RatVector> vectors_from_json(const Json& j);
RatMatrix matrix_from_json(const Json& j);
FarkasCertificate farkas_from_json(const Json& j);
OrderIsoWitness witness_from_json(const Json& j);

struct CommandOptions {
  int depth = 3;
  std::size_t max_rays = 12;  // refuse isomorphism searches on larger cones
  int grid = 3;
  std::uint64_t seed = 1;
  std::size_t random_points = 0;
  bool affine = false;
  std::string kind = "max";
};

struct CommandResult {
  int exit_code = exit_input_error;
  Json report;       // complete report (schema, inputs, verdict, certificates)
  std::string text;  // human-readable summary
};

/// Runs a command against a theory. `theory_text` is embedded in the report.
/// Throws Error on invalid arguments (unknown names, malformed vectors).
CommandResult run_command(const std::string& command, const std::vector<std::string>& args,
                          const std::string& theory_text, const CommandOptions& options);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> messages;
};

/// Re-checks a report's certificates against its embedded theory.
VerifyResult verify_report(const Json& report);

}  // namespace conelab

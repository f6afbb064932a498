#pragma once

// Line-based theory files: named state spaces, bipartite states, maps and
// ensembles. See docs/theory-format.md for the grammar.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/steering.hpp"

namespace conelab {

struct SpaceDecl {
  std::string name;
  std::size_t dim = 0;
  std::vector<RatVector> rays;
  std::vector<RatVector> facets;  // optional; checked against the rays
  RatVector unit;
  int line = 0;
};

struct StateDecl {
  std::string name;
  std::string a, b;
  std::vector<RatVector> rows;
  int line = 0;
};

struct MapDecl {
  std::string name;
  std::string domain, codomain;
  std::vector<RatVector> rows;
  int line = 0;
};

struct EnsembleDecl {
  std::string name;
  std::string state;
  std::vector<RatVector> parts;
  int line = 0;
};

enum class BlockKind { space, state, map, ensemble };

struct TheoryFile {
  std::vector<SpaceDecl> spaces;
  std::vector<StateDecl> states;
  std::vector<MapDecl> maps;
  std::vector<EnsembleDecl> ensembles;
  std::vector<std::pair<BlockKind, std::size_t>> order;  // declaration order
};

struct MapDef {
  std::string domain, codomain;
  RatMatrix matrix;
};

struct EnsembleDef {
  std::string state;
  Ensemble ensemble;
};

class Theory {
 public:
  const TheoryFile& file() const { return file_; }

  const StateSpace& space(const std::string& name) const;
  const BipartiteState& state(const std::string& name) const;
  const MapDef& map(const std::string& name) const;
  const EnsembleDef& ensemble(const std::string& name) const;

  std::vector<std::string> space_names() const;
  std::vector<std::string> state_names() const;

  friend Theory build_theory(TheoryFile file);

 private:
  TheoryFile file_;
  std::map<std::string, StateSpace> spaces_;
  std::map<std::string, BipartiteState> states_;
  std::map<std::string, MapDef> maps_;
  std::map<std::string, EnsembleDef> ensembles_;
};

/// Syntax only. Throws ParseError("line N: ...").
TheoryFile parse_theory_file(std::string_view text);
/// Validates every declaration. Throws ParseError anchored at the offending block.
Theory build_theory(TheoryFile file);
Theory parse_theory(std::string_view text);

/// Canonical text; parse followed by serialize is the identity on canonical files.
std::string serialize_theory(const TheoryFile& file);

/// Parses a vector literal: rationals separated by spaces and/or commas.
RatVector parse_vector(std::string_view text);

/// Built-in fixture library (canonical text and parsed form).
const std::string& fixture_text();
const Theory& fixture_library();

}  // namespace conelab

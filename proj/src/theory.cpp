#include "conelab/theory.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "conelab/dd.hpp"

namespace conelab {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

RatVector parse_numbers(const std::vector<std::string>& tok, int line) {
  if (tok.size() < 2) fail(line, "'" + tok[0] + "' needs at least one number");
  RatVector v;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    try {
      v.push_back(parse_rational(tok[i]));
    } catch (const ParseError& e) {
      fail(line, e.what());
    }
  }
  return v;
}

std::string parse_name(const std::vector<std::string>& tok, int line) {
  if (tok.size() != 2) fail(line, "'" + tok[0] + "' takes exactly one name");
  return tok[1];
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

std::string join(const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace

RatVector parse_vector(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  RatVector v;
  for (const auto& t : tokenize(s)) v.push_back(parse_rational(t));
  if (v.empty()) throw ParseError("empty vector literal");
  return v;
}

TheoryFile parse_theory_file(std::string_view text) {
  TheoryFile file;
  std::set<std::string> names;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  enum class Mode { top, space, state, map, ensemble } mode = Mode::top;
  int block_line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokenize(raw);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& key = tok[0];

    if (mode == Mode::top) {
      if (key != "space" && key != "state" && key != "map" && key != "ensemble")
        fail(line, "expected 'space', 'state', 'map' or 'ensemble', got '" + key + "'");
      const std::string name = parse_name(tok, line);
      if (!valid_name(name)) fail(line, "invalid name '" + name + "'");
      if (!names.insert(name).second) fail(line, "duplicate name '" + name + "'");
      block_line = line;
      if (key == "space") {
        file.spaces.push_back({name, 0, {}, {}, {}, line});
        file.order.emplace_back(BlockKind::space, file.spaces.size() - 1);
        mode = Mode::space;
      } else if (key == "state") {
        file.states.push_back({name, {}, {}, {}, line});
        file.order.emplace_back(BlockKind::state, file.states.size() - 1);
        mode = Mode::state;
      } else if (key == "map") {
        file.maps.push_back({name, {}, {}, {}, line});
        file.order.emplace_back(BlockKind::map, file.maps.size() - 1);
        mode = Mode::map;
      } else {
        file.ensembles.push_back({name, {}, {}, line});
        file.order.emplace_back(BlockKind::ensemble, file.ensembles.size() - 1);
        mode = Mode::ensemble;
      }
      continue;
    }

    if (key == "end") {
      if (tok.size() != 1) fail(line, "'end' takes no arguments");
      switch (mode) {
        case Mode::space: {
          const auto& s = file.spaces.back();
          if (s.dim == 0) fail(block_line, "space '" + s.name + "' has no 'dim'");
          if (s.rays.empty()) fail(block_line, "space '" + s.name + "' has no rays");
          if (s.unit.empty()) fail(block_line, "space '" + s.name + "' has no 'unit'");
          break;
        }
        case Mode::state: {
          const auto& s = file.states.back();
          if (s.a.empty() || s.b.empty()) fail(block_line, "state '" + s.name + "' needs 'A' and 'B'");
          if (s.rows.empty()) fail(block_line, "state '" + s.name + "' has no rows");
          break;
        }
        case Mode::map: {
          const auto& s = file.maps.back();
          if (s.domain.empty() || s.codomain.empty())
            fail(block_line, "map '" + s.name + "' needs 'domain' and 'codomain'");
          if (s.rows.empty()) fail(block_line, "map '" + s.name + "' has no rows");
          break;
        }
        case Mode::ensemble: {
          const auto& s = file.ensembles.back();
          if (s.state.empty()) fail(block_line, "ensemble '" + s.name + "' needs 'state'");
          if (s.parts.empty()) fail(block_line, "ensemble '" + s.name + "' has no parts");
          break;
        }
        case Mode::top: break;
      }
      mode = Mode::top;
      continue;
    }

    switch (mode) {
      case Mode::space: {
        auto& s = file.spaces.back();
        if (key == "dim") {
          if (tok.size() != 2) fail(line, "'dim' takes one integer");
          const Rational d = [&] {
            try {
              return parse_rational(tok[1]);
            } catch (const ParseError& e) {
              fail(line, e.what());
            }
          }();
          if (d.get_den() != 1 || sgn(d) <= 0 || d > 64) fail(line, "'dim' must be an integer between 1 and 64");
          if (s.dim != 0) fail(line, "duplicate 'dim'");
          s.dim = d.get_num().get_ui();
        } else if (key == "ray" || key == "facet" || key == "unit") {
          if (s.dim == 0) fail(line, "'dim' must come first");
          RatVector v = parse_numbers(tok, line);
          if (v.size() != s.dim) fail(line, "expected " + std::to_string(s.dim) + " numbers, got " + std::to_string(v.size()));
          if (key == "ray") s.rays.push_back(std::move(v));
          else if (key == "facet") s.facets.push_back(std::move(v));
          else if (!s.unit.empty()) fail(line, "duplicate 'unit'");
          else s.unit = std::move(v);
        } else {
          fail(line, "unknown space field '" + key + "'");
        }
        break;
      }
      case Mode::state: {
        auto& s = file.states.back();
        if (key == "A") s.a = parse_name(tok, line);
        else if (key == "B") s.b = parse_name(tok, line);
        else if (key == "row") s.rows.push_back(parse_numbers(tok, line));
        else fail(line, "unknown state field '" + key + "'");
        break;
      }
      case Mode::map: {
        auto& s = file.maps.back();
        if (key == "domain") s.domain = parse_name(tok, line);
        else if (key == "codomain") s.codomain = parse_name(tok, line);
        else if (key == "row") s.rows.push_back(parse_numbers(tok, line));
        else fail(line, "unknown map field '" + key + "'");
        break;
      }
      case Mode::ensemble: {
        auto& s = file.ensembles.back();
        if (key == "state") s.state = parse_name(tok, line);
        else if (key == "part") s.parts.push_back(parse_numbers(tok, line));
        else fail(line, "unknown ensemble field '" + key + "'");
        break;
      }
      case Mode::top: break;
    }
  }
  if (mode != Mode::top) fail(block_line, "block is missing 'end'");
  return file;
}

namespace {

RatMatrix rows_matrix(const std::vector<RatVector>& rows, std::size_t n_rows, std::size_t n_cols, int line,
                      const std::string& what) {
  if (rows.size() != n_rows)
    fail(line, what + " needs " + std::to_string(n_rows) + " rows, got " + std::to_string(rows.size()));
  for (const auto& r : rows)
    if (r.size() != n_cols)
      fail(line, what + " rows need " + std::to_string(n_cols) + " entries, got " + std::to_string(r.size()));
  return RatMatrix::from_rows(rows, n_cols);
}

}  // namespace

Theory build_theory(TheoryFile file) {
  Theory t;
  for (const auto& s : file.spaces) {
    try {
      PolyhedralCone cone = PolyhedralCone::from_rays(s.dim, s.rays);
      if (!s.facets.empty() && canonical_ray_list(s.facets) != cone.facets())
        fail(s.line, "declared facets do not match the rays");
      t.spaces_.emplace(s.name, StateSpace(std::move(cone), s.unit));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(s.line, "space '" + s.name + "': " + e.what());
    }
  }
  auto lookup_space = [&](const std::string& name, int line) -> const StateSpace& {
    auto it = t.spaces_.find(name);
    if (it == t.spaces_.end()) fail(line, "unknown space '" + name + "'");
    return it->second;
  };
  for (const auto& s : file.states) {
    const StateSpace& a = lookup_space(s.a, s.line);
    const StateSpace& b = lookup_space(s.b, s.line);
    const RatMatrix m = rows_matrix(s.rows, b.dim(), a.dim(), s.line, "state '" + s.name + "'");
    try {
      t.states_.emplace(s.name, BipartiteState(a, b, m));
    } catch (const Error& e) {
      fail(s.line, "state '" + s.name + "': " + e.what());
    }
  }
  for (const auto& s : file.maps) {
    const StateSpace& d = lookup_space(s.domain, s.line);
    const StateSpace& c = lookup_space(s.codomain, s.line);
    const RatMatrix m = rows_matrix(s.rows, c.dim(), d.dim(), s.line, "map '" + s.name + "'");
    t.maps_.emplace(s.name, MapDef{s.domain, s.codomain, m});
  }
  for (const auto& s : file.ensembles) {
    auto it = t.states_.find(s.state);
    if (it == t.states_.end()) fail(s.line, "unknown state '" + s.state + "'");
    try {
      const auto& w = it->second;
      t.ensembles_.emplace(s.name,
                           EnsembleDef{s.state, make_ensemble(w.space_b(), marginal_b(w).vector, s.parts)});
    } catch (const Error& e) {
      fail(s.line, "ensemble '" + s.name + "': " + e.what());
    }
  }
  t.file_ = std::move(file);
  return t;
}

Theory parse_theory(std::string_view text) { return build_theory(parse_theory_file(text)); }

std::string serialize_theory(const TheoryFile& file) {
  std::string out;
  auto field = [&](const std::string& key, const std::string& value) { out += "  " + key + " " + value + "\n"; };
  for (std::size_t b = 0; b < file.order.size(); ++b) {
    if (b) out += "\n";
    const auto [kind, i] = file.order[b];
    switch (kind) {
      case BlockKind::space: {
        const auto& s = file.spaces[i];
        out += "space " + s.name + "\n";
        field("dim", std::to_string(s.dim));
        for (const auto& r : s.rays) field("ray", join(r));
        for (const auto& f : s.facets) field("facet", join(f));
        field("unit", join(s.unit));
        break;
      }
      case BlockKind::state: {
        const auto& s = file.states[i];
        out += "state " + s.name + "\n";
        field("A", s.a);
        field("B", s.b);
        for (const auto& r : s.rows) field("row", join(r));
        break;
      }
      case BlockKind::map: {
        const auto& s = file.maps[i];
        out += "map " + s.name + "\n";
        field("domain", s.domain);
        field("codomain", s.codomain);
        for (const auto& r : s.rows) field("row", join(r));
        break;
      }
      case BlockKind::ensemble: {
        const auto& s = file.ensembles[i];
        out += "ensemble " + s.name + "\n";
        field("state", s.state);
        for (const auto& p : s.parts) field("part", join(p));
        break;
      }
    }
    out += "end\n";
  }
  return out;
}

const StateSpace& Theory::space(const std::string& name) const {
  auto it = spaces_.find(name);
  if (it == spaces_.end()) throw Error("unknown space '" + name + "'");
  return it->second;
}

const BipartiteState& Theory::state(const std::string& name) const {
  auto it = states_.find(name);
  if (it == states_.end()) throw Error("unknown state '" + name + "'");
  return it->second;
}

const MapDef& Theory::map(const std::string& name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw Error("unknown map '" + name + "'");
  return it->second;
}

const EnsembleDef& Theory::ensemble(const std::string& name) const {
  auto it = ensembles_.find(name);
  if (it == ensembles_.end()) throw Error("unknown ensemble '" + name + "'");
  return it->second;
}

std::vector<std::string> Theory::space_names() const {
  std::vector<std::string> out;
  for (const auto& s : file_.spaces) out.push_back(s.name);
  return out;
}

std::vector<std::string> Theory::state_names() const {
  std::vector<std::string> out;
  for (const auto& s : file_.states) out.push_back(s.name);
  return out;
}

}  // namespace conelab

#include "conelab/theory.hpp"

namespace conelab {

namespace {

// Canonical text: parse followed by serialize reproduces it byte for byte.
const char* const kFixtures = R"(space bit
  dim 2
  ray 1 0
  ray 0 1
  unit 1 1
end

space trit
  dim 3
  ray 1 0 0
  ray 0 1 0
  ray 0 0 1
  unit 1 1 1
end

space simplex_2
  dim 2
  ray 1 0
  ray 0 1
  unit 1 1
end

space simplex_3
  dim 3
  ray 1 0 0
  ray 0 1 0
  ray 0 0 1
  unit 1 1 1
end

space simplex_4
  dim 4
  ray 1 0 0 0
  ray 0 1 0 0
  ray 0 0 1 0
  ray 0 0 0 1
  unit 1 1 1 1
end

space square_space
  dim 3
  ray 1 1 1
  ray 1 1 -1
  ray 1 -1 1
  ray 1 -1 -1
  facet 1 1 0
  facet 1 -1 0
  facet 1 0 1
  facet 1 0 -1
  unit 1 0 0
end

space pentagon_space
  dim 3
  ray 1 2 0
  ray 1 1 2
  ray 1 -1 2
  ray 1 -2 0
  ray 1 0 -2
  unit 1 0 0
end

space hexagon_space
  dim 3
  ray 1 1 0
  ray 1 1 1
  ray 1 0 1
  ray 1 -1 0
  ray 1 -1 -1
  ray 1 0 -1
  unit 1 0 0
end

space cube_space
  dim 4
  ray 1 1 1 1
  ray 1 1 1 -1
  ray 1 1 -1 1
  ray 1 1 -1 -1
  ray 1 -1 1 1
  ray 1 -1 1 -1
  ray 1 -1 -1 1
  ray 1 -1 -1 -1
  unit 1 0 0 0
end

space octahedron_space
  dim 4
  ray 1 1 0 0
  ray 1 -1 0 0
  ray 1 0 1 0
  ray 1 0 -1 0
  ray 1 0 0 1
  ray 1 0 0 -1
  unit 1 0 0 0
end

state paper_sec5_nonsteering
  A trit
  B bit
  row 1/4 0 1/4
  row 0 1/4 1/4
end

state classical_correlated_2
  A bit
  B bit
  row 1/2 0
  row 0 1/2
end

state classical_correlated_3
  A trit
  B trit
  row 1/3 0 0
  row 0 1/3 0
  row 0 0 1/3
end

state bit_scaled_state
  A bit
  B bit
  row 2/3 0
  row 0 1/3
end

state square_unique_section
  A square_space
  B square_space
  row 1 0 1
  row 0 1 0
  row 1 0 1
end

state square_many_sections
  A square_space
  B square_space
  row 1 0 0
  row 0 1 1
  row 1 0 0
end

state cube_hexagon_pairs
  A cube_space
  B hexagon_space
  row 1 0 0 0
  row 0 1 1 0
  row 0 0 1 1
end

map bit_scaling
  domain bit
  codomain bit
  row 2 0
  row 0 1
end

ensemble nonsteering_pair
  state paper_sec5_nonsteering
  part 0 1/2
  part 1/2 0
end
)";

}  // namespace

const std::string& fixture_text() {
  static const std::string text = kFixtures;
  return text;
}

const Theory& fixture_library() {
  static const Theory lib = parse_theory(fixture_text());
  return lib;
}

}  // namespace conelab

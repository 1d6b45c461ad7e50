#include "graphwave/builtin_specs.hpp"

namespace graphwave {

namespace {

// Keep these byte-identical to the files in core/specs (a test checks).
constexpr const char* kTJunction = R"spec({
  "name": "tjunction",
  "vertices": 3,
  "edges": [
    {"u": 0, "v": 1, "length": 0.40450849718747373},
    {"u": 0, "v": 2, "length": 0.5954915028125263}
  ],
  "leads": [0],
  "vertex_matrix": {
    "0": {"entries": [
      {"re": 0.0, "im": 0.0},
      {"re": 0.7071067811865476, "im": 0.0},
      {"re": -0.7071067811865476, "im": 0.0},
      {"re": -0.7071067811865476, "im": 0.0},
      {"re": 0.5, "im": 0.0},
      {"re": 0.5, "im": 0.0},
      {"re": 0.7071067811865476, "im": 0.0},
      {"re": 0.5, "im": 0.0},
      {"re": 0.5, "im": 0.0}
    ]},
    "1": "neumann",
    "2": "neumann"
  }
}
)spec";

constexpr const char* kTJunctionClosed = R"spec({
  "name": "tjunction_closed",
  "vertices": 3,
  "edges": [
    {"u": 0, "v": 1, "length": 0.40450849718747373},
    {"u": 0, "v": 2, "length": 0.5954915028125263}
  ],
  "leads": [],
  "vertex_matrix": {
    "0": "neumann",
    "1": "neumann",
    "2": "neumann"
  }
}
)spec";

}  // namespace

std::optional<std::string> builtin_spec_text(const std::string& name) {
  if (name == "tjunction") return std::string(kTJunction);
  if (name == "tjunction_closed") return std::string(kTJunctionClosed);
  return std::nullopt;
}

std::vector<std::string> builtin_spec_names() {
  return {"tjunction", "tjunction_closed"};
}

}  // namespace graphwave

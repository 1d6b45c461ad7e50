#pragma once

#include <string>

#include "graphwave/graph.hpp"

namespace graphwave {

// Parses the JSON graph description format.  Structural problems (bad JSON,
// missing blocks, malformed entries) throw SpecError; the graph-level checks
// (connectivity, unitarity, ...) happen later in build_graph.
GraphSpec parse_graph_spec(const std::string& text);

GraphSpec load_graph_spec(const std::string& path);

}  // namespace graphwave

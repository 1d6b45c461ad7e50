#include "graphwave/specfile.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "graphwave/builtin_specs.hpp"
#include "graphwave/errors.hpp"
#include "graphwave/graph.hpp"
#include "helpers.hpp"

using graphwave::SpecError;
using graphwave::parse_graph_spec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("specfile") {

TEST_CASE("minimal spec") {
  auto spec = parse_graph_spec(
      R"({"vertices": 2, "edges": [{"u": 0, "v": 1, "length": 1.5}], "leads": [0]})");
  CHECK(spec.vertex_count == 2);
  REQUIRE(spec.edges.size() == 1);
  CHECK(spec.edges[0].u == 0);
  CHECK(spec.edges[0].v == 1);
  CHECK(spec.edges[0].length == 1.5);
  REQUIRE(spec.leads.size() == 1);
  CHECK(spec.leads[0] == 0);
  CHECK(spec.vertex_matrices.empty());

  auto g = graphwave::build_graph(spec);  // all-Neumann by default
  CHECK(g.vertex_count() == 2);
  CHECK(g.open());
}

TEST_CASE("explicit matrices") {
  auto spec = parse_graph_spec(R"({
    "vertices": 2,
    "edges": [{"u": 0, "v": 1, "length": 1.0}],
    "leads": [0],
    "vertex_matrix": {
      "0": "neumann",
      "1": {"entries": [{"re": -1.0, "im": 0.0}]}
    }
  })");
  REQUIRE(spec.vertex_matrices.count(0) == 1);
  CHECK(spec.vertex_matrices.at(0).entries.size() == 0);  // marker for neumann
  REQUIRE(spec.vertex_matrices.count(1) == 1);
  REQUIRE(spec.vertex_matrices.at(1).entries.size() == 1);
  CHECK(spec.vertex_matrices.at(1).entries(0, 0) == std::complex<double>(-1.0, 0.0));
  CHECK_NOTHROW(graphwave::build_graph(spec));
}

TEST_CASE("malformed input") {
  auto minimal = [](const std::string& extra) {
    return R"({"vertices": 2, "edges": [{"u": 0, "v": 1, "length": 1.0}])" + extra + "}";
  };
  CHECK_THROWS_AS(parse_graph_spec("{"), SpecError);
  CHECK_THROWS_AS(parse_graph_spec("[1, 2]"), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "edge": 1)")), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(R"({"edges": []})"), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(R"({"vertices": 2.5, "edges": []})"), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(R"({"vertices": 2})"), SpecError);
  CHECK_THROWS_AS(
      parse_graph_spec(R"({"vertices": 2, "edges": [{"u": 0, "v": 1}]})"), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "leads": 0)")), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "leads": [0.5])")), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "vertex_matrix": [])")), SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "vertex_matrix": {"x": "neumann"})")),
                  SpecError);
  CHECK_THROWS_AS(parse_graph_spec(minimal(R"(, "vertex_matrix": {"0": "dirichlet"})")),
                  SpecError);
  // two entries cannot form a square matrix
  CHECK_THROWS_AS(
      parse_graph_spec(minimal(
          R"(, "vertex_matrix": {"0": {"entries": [{"re": 1, "im": 0}, {"re": 0, "im": 0}]}})")),
      SpecError);
  // entries must carry both parts
  CHECK_THROWS_AS(
      parse_graph_spec(minimal(R"(, "vertex_matrix": {"1": {"entries": [{"re": 1}]}})")),
      SpecError);
}

TEST_CASE("loading from disk") {
  CHECK_THROWS_AS(graphwave::load_graph_spec("/nonexistent/graph.json"), SpecError);
  auto spec = graphwave::load_graph_spec(std::string(GRAPHWAVE_SOURCE_SPECS) + "/tjunction.json");
  REQUIRE(spec.edges.size() == 2);
  CHECK(spec.edges[0].length == testhelp::kL1);
  CHECK(spec.edges[1].length == testhelp::kL2);
}

TEST_CASE("builtin specs mirror the files") {
  auto names = graphwave::builtin_spec_names();
  REQUIRE(names.size() == 2);
  for (const auto& name : names) {
    auto text = graphwave::builtin_spec_text(name);
    REQUIRE(text.has_value());
    CHECK(*text == read_file(std::string(GRAPHWAVE_SOURCE_SPECS) + "/" + name + ".json"));
  }
  CHECK_FALSE(graphwave::builtin_spec_text("no-such-graph").has_value());
}

}  // TEST_SUITE

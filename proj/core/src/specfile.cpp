#include "graphwave/specfile.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw SpecError("graph spec: " + what); }

int require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

GraphSpec parse_graph_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    bad(err.what());
  }
  if (!root.is_object()) bad("top level must be an object");
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    if (key != "vertices" && key != "edges" && key != "leads" &&
        key != "vertex_matrix" && key != "name")
      bad("unknown key '" + key + "'");
  }

  GraphSpec spec;
  if (!root.contains("vertices")) bad("missing 'vertices'");
  spec.vertex_count = require_int(root.at("vertices"), "'vertices'");

  if (!root.contains("edges") || !root.at("edges").is_array())
    bad("missing 'edges' array");
  for (const auto& e : root.at("edges")) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("length"))
      bad("each edge needs 'u', 'v' and 'length'");
    EdgeSpec edge;
    edge.u = require_int(e.at("u"), "edge 'u'");
    edge.v = require_int(e.at("v"), "edge 'v'");
    if (!e.at("length").is_number()) bad("edge 'length' must be a number");
    edge.length = e.at("length").get<double>();
    spec.edges.push_back(edge);
  }

  if (root.contains("leads")) {
    if (!root.at("leads").is_array()) bad("'leads' must be an array");
    for (const auto& v : root.at("leads")) spec.leads.push_back(require_int(v, "lead"));
  }

  if (root.contains("vertex_matrix")) {
    const auto& table = root.at("vertex_matrix");
    if (!table.is_object()) bad("'vertex_matrix' must map vertex ids to matrices");
    for (const auto& item : table.items()) {
      const std::string& key = item.key();
      std::size_t used = 0;
      int vertex = 0;
      try {
        vertex = std::stoi(key, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != key.size()) bad("vertex_matrix key '" + key + "' is not a vertex id");

      const json& val = item.value();
      VertexMatrixSpec entry;
      if (val.is_string()) {
        if (val.get<std::string>() != "neumann")
          bad("vertex_matrix values are \"neumann\" or {\"entries\": [...]}");
      } else if (val.is_object() && val.contains("entries") && val.at("entries").is_array()) {
        const auto& list = val.at("entries");
        auto dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(list.size()))));
        if (dim < 1 || dim * dim != static_cast<int>(list.size()))
          bad("matrix entry list must hold a square number of elements");
        entry.entries = Eigen::MatrixXcd(dim, dim);
        int idx = 0;
        for (const auto& cell : list) {
          if (!cell.is_object() || !cell.contains("re") || !cell.contains("im") ||
              !cell.at("re").is_number() || !cell.at("im").is_number())
            bad("matrix entries must be {\"re\": .., \"im\": ..} objects");
          entry.entries(idx / dim, idx % dim) = std::complex<double>(
              cell.at("re").get<double>(), cell.at("im").get<double>());
          ++idx;
        }
      } else {
        bad("vertex_matrix values are \"neumann\" or {\"entries\": [...]}");
      }
      spec.vertex_matrices[vertex] = entry;
    }
  }
  return spec;
}

GraphSpec load_graph_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read graph spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_spec(buf.str());
}

}  // namespace graphwave

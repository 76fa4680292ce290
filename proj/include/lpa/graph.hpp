#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpa {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Raised when a graph would violate its structural invariants.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by parse_graph; carries the 1-based line of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  std::string id;
  std::string source;
  std::string range;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// True for identifiers of the form [A-Za-z][A-Za-z0-9_']*.
bool is_valid_identifier(std::string_view s);

/// Finite directed multigraph with named vertices and edges.
///
/// Declaration order of vertices fixes all matrix indexing; declaration
/// order of edges fixes iteration order everywhere else. Instances are
/// immutable once constructed.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  bool has_vertex(std::string_view name) const { return find_vertex(name).has_value(); }
  bool has_edge(std::string_view name) const { return find_edge(name).has_value(); }

  /// Index lookups that throw GraphError for unknown names.
  VertexId vertex_index(std::string_view name) const;
  EdgeId edge_index(std::string_view name) const;

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const std::string& edge_name(EdgeId e) const { return edges_.at(e).id; }

  VertexId source(EdgeId e) const { return source_.at(e); }
  VertexId range(EdgeId e) const { return range_.at(e); }

  /// Edges emitted by v, in declaration order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }
  std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }
  bool is_sink(VertexId v) const { return out_.at(v).empty(); }
  bool has_sinks() const;

  /// Successor relation as a boolean adjacency list (parallel edges collapsed).
  std::vector<std::vector<VertexId>> successors() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> vertex_lookup_;
  std::unordered_map<std::string, EdgeId> edge_lookup_;
  std::vector<VertexId> source_;
  std::vector<VertexId> range_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Parses the JSON graph format: {"vertices": [...], "edges": [[id, s, r], ...]}.
Graph parse_graph(std::string_view text);

/// Renders a graph in the same JSON format, one edge per line.
std::string render_graph(const Graph& g);

/// Reads and parses a graph file. Throws ParseError or std::runtime_error.
Graph load_graph_file(const std::string& path);

/// Built-in graphs: E_star, E_star_star, F_star, F_star_star, R3.
Graph builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

/// Regular vertices: out-degree >= 1 (every graph here is finite).
std::set<std::string> regular_vertices(const Graph& g);

}  // namespace lpa

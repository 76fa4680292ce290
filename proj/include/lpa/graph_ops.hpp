#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/limits.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

/// Entry (v, w) counts the edges from v to w; indexed by declaration order.
IntMatrix adjacency_matrix(const Graph& g);

struct SpiFailure {
  enum class Kind {
    ExitFreeCycle,  // vertices: the cycle
    Unreachable,    // vertices: [from, representative of the unreached cyclic component, ...component]
    Sink,           // vertices: [sink]
    NoCycle,        // vertices: empty
  };
  Kind kind;
  std::vector<std::string> vertices;

  std::string describe() const;
  friend bool operator==(const SpiFailure&, const SpiFailure&) = default;
};

struct SpiReport {
  bool is_spi = false;
  std::vector<SpiFailure> failures;
};

/// Checks the three SPI conditions, specialised to finite graphs: no
/// exit-free cycle, no sinks and every vertex reaches every cyclic strongly
/// connected component, and at least one cycle.
SpiReport is_spi(const Graph& g);

/// True iff u lies on two distinct first-return cycles with no repeated
/// intermediate vertex, or on one such cycle through a vertex that also lies
/// on a cycle avoiding u.
bool supports_two_return_paths(const Graph& g, const std::string& u);

/// Strongly connected components in order of first vertex; each sorted.
std::vector<std::vector<VertexId>> strongly_connected_components(const Graph& g);

struct GraphIsomorphism {
  std::vector<std::pair<std::string, std::string>> vertex_map;  // g-name -> h-name, in g order
  std::vector<std::pair<std::string, std::string>> edge_map;    // g-name -> h-name, in g order
};

/// Backtracking search; the first bijection in declaration order wins.
/// Throws SizeCapError above caps.isomorphism_vertices.
std::optional<GraphIsomorphism> graph_isomorphic(const Graph& g, const Graph& h,
                                                 const SizeCaps& caps = size_caps_from_env());

struct UnionResult {
  Graph graph;
  std::map<std::string, std::string> vertex_names;  // h-name -> name in the union
  std::map<std::string, std::string> edge_names;
};

/// base if free, else base_2, base_3, ... whichever is first absent from taken.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

/// g's identifiers are kept; h's are suffixed on collision. Vertex order is
/// g's followed by h's.
UnionResult disjoint_union_with_names(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace lpa

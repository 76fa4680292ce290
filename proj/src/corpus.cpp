#include "lpa/corpus.hpp"

#include "lpa/graph_ops.hpp"

namespace lpa {

Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices, int max_multiplicity) {
  std::uniform_int_distribution<std::size_t> size(1, max_vertices);
  std::uniform_int_distribution<int> mult(0, max_multiplicity);
  const std::size_t n = size(rng);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("x" + std::to_string(i + 1));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int k = mult(rng); k > 0; --k) {
        edges.push_back({"y" + std::to_string(edges.size() + 1), vertices[i], vertices[j]});
      }
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

std::optional<std::string> find_splice_vertex(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_sink(v) && supports_two_return_paths(g, g.vertex_name(v))) return g.vertex_name(v);
  }
  return std::nullopt;
}

std::vector<Graph> random_spi_corpus(std::uint64_t seed, std::size_t count, std::size_t max_vertices) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  while (out.size() < count) {
    Graph g = random_graph(rng, max_vertices);
    if (is_spi(g).is_spi && find_splice_vertex(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace lpa

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

/// 1..max_vertices vertices x1.., adjacency entries uniform in
/// [0, max_multiplicity], edges y1.. in row-major order.
Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices, int max_multiplicity = 2);

/// First vertex (declaration order) that is regular and supports two return paths.
std::optional<std::string> find_splice_vertex(const Graph& g);

/// `count` random SPI graphs that each have a splice vertex. Deterministic in seed.
std::vector<Graph> random_spi_corpus(std::uint64_t seed, std::size_t count, std::size_t max_vertices = 6);

}  // namespace lpa

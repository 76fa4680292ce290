#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/graph.hpp"

// Slow, definition-level computations used to cross-check the fast paths.

namespace lpa {

/// SPI straight from the definition: the only hereditary saturated vertex
/// sets are empty and everything, every cycle has an exit, and every vertex
/// reaches a cycle. Enumerates all 2^n vertex subsets.
bool spi_by_hereditary_saturated(const Graph& g);

/// All normal-form monomials of ctx with |alpha| + |beta| <= max_length.
std::vector<PathMonomial> normal_monomials(const AlgebraContext& ctx, std::size_t max_length);

struct BasisSoundness {
  std::size_t monomials = 0;  // normal forms up to the length bound
  std::size_t rank = 0;       // rank of their images as operators
  std::size_t reached = 0;    // distinct normal forms hit by normalizing all raw words
  bool raw_words_stay_short = true;
};

/// Normal forms of C(E, V) up to max_length, sent to L(E(V)) by v -> v + v',
/// e -> e + e' and realized as operators on paths ending at sinks (probed on
/// paths up to probe_length). Rank is computed modulo a large prime, which
/// can only underestimate the rational rank.
BasisSoundness basis_soundness(const Graph& g, const std::set<std::string>& complete_at, std::size_t max_length,
                               std::size_t probe_length);

}  // namespace lpa

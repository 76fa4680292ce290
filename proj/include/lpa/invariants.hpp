#pragma once

#include <optional>
#include <string>

#include "lpa/graph.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/k0.hpp"

namespace lpa {

/// (K0, [1], det(I - A^t)) together with the SPI check.
struct GraphInvariants {
  PointedAbelianGroup k0;
  /// Present only for sink-free graphs, where I - A^t is the square presentation.
  std::optional<Integer> determinant;
  /// "rows x cols" of the relation matrix.
  std::string presentation_shape;
  SpiReport spi;
};

GraphInvariants compute_invariants(const Graph& g);

/// det(I - A^t) for any graph (the matrix is always square).
Integer det_identity_minus_transpose(const Graph& g);

/// "Z^0 ; unit=() ; det=-1 ; SPI=yes"
std::string summary_line(const GraphInvariants& inv);

}  // namespace lpa

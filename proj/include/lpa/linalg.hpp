#pragma once

#include <vector>

#include "lpa/matrix.hpp"

namespace lpa {

/// U * A * V = S with U, V unimodular and S diagonal, nonnegative, each
/// diagonal entry dividing the next, zeros last.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;

  /// The min(rows, cols) diagonal entries of S.
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Exact determinant by Bareiss fraction-free elimination. Throws
/// DimensionError for non-square input.
Integer determinant(const IntMatrix& a);

/// Inverse of a matrix with determinant +-1. Throws std::invalid_argument
/// otherwise.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& a);

/// x lies in the lattice spanned by the columns of a.
bool in_column_lattice(const IntMatrix& a, const std::vector<Integer>& x);

/// The columns of a span all of Z^rows.
bool columns_generate(const IntMatrix& a);

/// I - A^t for the adjacency matrix A of a graph on n vertices.
IntMatrix identity_minus_transpose(const IntMatrix& adjacency);

}  // namespace lpa

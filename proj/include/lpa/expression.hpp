#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lpa/algebra.hpp"

namespace lpa {

/// Syntax or name-resolution error; column() is the 1-based offset.
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(std::size_t column, const std::string& what);
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Evaluates an algebra expression.
///
///   expr    := ['-'] product (('+' | '-') product)*
///   product := factor+                      (juxtaposition multiplies)
///   factor  := atom '*'*                     (postfix involution)
///   atom    := identifier | integer ['/' integer] | '(' expr ')'
///
/// Identifiers name vertices or edges; a name that is both is rejected.
/// Numbers denote scalar multiples of the unit.
AlgebraElement evaluate_expression(const AlgebraContext& ctx, std::string_view text);

}  // namespace lpa

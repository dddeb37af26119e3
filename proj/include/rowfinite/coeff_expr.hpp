#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "rowfinite/scalar.hpp"

namespace rowfinite {

/// Parsed coefficient expression over integer literals, the variables n and
/// j, + - * / ^ (non-negative integer exponent), unary minus, parentheses and
/// the builtin cospi2(m) = cos(m*pi/2).
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' nonneg-int)?
///   atom   := int | 'n' | 'j' | 'cospi2' '(' expr ')' | '(' expr ')' | '-' atom
///
/// Values are immutable and cheap to copy (the tree is shared).
class CoeffExpr {
 public:
  struct Node;

  /// Constant expression.
  explicit CoeffExpr(const Scalar& value);

  Scalar eval(Index n, Index j) const;

  /// Canonical fully parenthesized rendering, useful in diagnostics.
  std::string to_string() const;

  /// True when the tree never references j.
  bool depends_on_j() const;

 private:
  explicit CoeffExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  friend CoeffExpr parse_coeff_expr(std::string_view text);

  std::shared_ptr<const Node> root_;
};

/// Throws ParseError with the byte offset of the offending token.
CoeffExpr parse_coeff_expr(std::string_view text);

inline Scalar eval_coeff(const CoeffExpr& expr, Index n, Index j) {
  return expr.eval(n, j);
}

/// cos(m*pi/2) for integer m: 1, 0, -1, 0 by m mod 4.
int cospi2(Index m);

}  // namespace rowfinite

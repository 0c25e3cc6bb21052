#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dvisit/coloring.hpp"

namespace dvisit {

using BigInt = boost::multiprecision::cpp_int;

enum class ExprKind { nat, var_x, var_y, neg, add, sub, mul, div, mod, min, max, lt, le, eq, ne, cond };

/// Immutable expression over the edge endpoints x and y.
class Expr {
 public:
  struct Node;

  ExprKind kind() const;
  /// Literal value of a `nat` node.
  const BigInt& value() const;
  std::size_t arity() const;
  Expr arg(std::size_t i) const;
  /// Source offset of the node's first token.
  std::size_t position() const;
  bool is_closed() const;
  std::size_t depth() const;

  /// Minimal-parenthesis rendering in the grammar accepted by parse().
  std::string pretty() const;

  /// Total evaluation: t / 0 = 0 and t % 0 = t. In strict mode a zero
  /// divisor throws DivisionByZero instead. Division truncates toward zero.
  BigInt eval(const BigInt& x, const BigInt& y, bool strict = false) const;

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

/// SyntaxError, UnknownIdentifier, or a divisor that is statically zero
/// (DivisionByZero), with the offending source offset.
class DslError : public Error {
 public:
  DslError(ErrorKind kind, std::size_t position, std::vector<std::string> expected, const std::string& detail);
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

//   expr   := cond
//   cond   := "if" cmp "then" expr "else" expr | cmp
//   cmp    := sum (("<" | "<=" | "==" | "!=") sum)?
//   sum    := term (("+" | "-") term)*
//   term   := factor (("*" | "/" | "%") factor)*
//   factor := nat | "x" | "y" | "min(" expr "," expr ")" | "max(" expr "," expr ")"
//           | "(" expr ")" | "-" factor
Expr parse(const std::string& source);

/// Color of {x, y}: the expression at (min, max), reduced into [0, k).
class DslColoring {
 public:
  DslColoring(Expr expr, std::size_t k, bool strict = false);

  Color operator()(Node x, Node y) const;
  const Expr& expr() const noexcept { return expr_; }
  std::size_t k() const noexcept { return k_; }

  Coloring to_coloring() const;

 private:
  Expr expr_;
  std::size_t k_;
  bool strict_;
};

/// constant:<i>, sum-mod, diff-mod, block:<b> (floor(min / b) mod k), or
/// table:<file>. Throws UnknownBuiltin.
Coloring builtin(const std::string& name, std::size_t k);

}  // namespace dvisit

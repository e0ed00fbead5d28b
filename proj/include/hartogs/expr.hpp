#pragma once

// Expression trees over a single real variable t, as used for the profile F.
//
// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := signed (('*'|'/') signed)*
//   signed := '-' signed | factor
//   factor := base ('^' signed)?          exponent must fold to a constant
//   base   := number | 't' | '(' expr ')' | ('exp'|'log') '(' expr ')'

#include <memory>
#include <string>
#include <string_view>

namespace hartogs {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log };

class Expr {
 public:
  struct Node;

  Expr();  // the constant 0

  static Expr number(double value);
  static Expr var();
  static Expr neg(Expr a);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, double exponent);
  static Expr exp(Expr a);
  static Expr log(Expr a);

  Op op() const;
  // Literal value for Number, exponent for Pow, 0 otherwise.
  double value() const;
  // Operands; lhs() is the single operand of unary nodes and the base of Pow.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_number() const { return op() == Op::Number; }
  bool is_number(double v) const { return is_number() && value() == v; }
  bool depends_on_t() const;

  // Throws EvaluationError on log of a non-positive value, division by zero,
  // invalid powers and non-finite intermediate results.
  double operator()(double t) const;

  std::size_t size() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  static Expr make(Op op, Expr a, Expr b, double value);
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Throws ParseError (with byte offset) on malformed input, unknown identifiers
// and non-constant exponents.
Expr parse_expr(std::string_view src);

// Canonical printing; parse_expr(to_string(e)) == e structurally.
std::string to_string(const Expr& e);

// Constant folding and 0/1 identities only.
Expr simplify(const Expr& e);

// d/dt, simplified.
Expr derivative(const Expr& e);

}  // namespace hartogs

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nsr/jet.hpp"

namespace nsr {

/// Syntax or name error while parsing an expression string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// log/sqrt of a non-positive value, division by zero, or a non-finite result.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpr)
      : std::runtime_error(what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}
  const std::string& subexpression() const { return subexpr_; }

 private:
  std::string subexpr_;
};

/// Immutable closed-form expression over coordinates x1..xn.
///
/// Variables are stored 0-based (`x1` has index 0). Nodes are shared, so
/// copying an Expr is cheap.
class Expr {
 public:
  enum class Kind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Function };
  enum class Func { Sin, Cos, Exp, Log, Sqrt };

  /// The constant 0.
  Expr();

  static Expr constant(double c);
  static Expr variable(std::size_t index);
  static Expr function(Func f, Expr arg);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  double constant_value() const;
  std::size_t variable_index() const;
  int exponent() const;
  Func func() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant(double c) const;

  /// One past the largest variable index used (0 when no variables occur).
  std::size_t arity() const;

  friend Expr operator-(const Expr& a);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

  struct Node;

 private:
  friend class ExprBuilder;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | 'x'digits | func '(' expr ')' | '(' expr ')' | '-' base
/// with func one of sin, cos, exp, log, sqrt. Whitespace is ignored.
/// Note that '-' binds tighter than '^', so "-x1^2" is (-x1)^2.
Expr parse(std::string_view text, std::size_t n);

/// Re-parseable text; every composite is parenthesized and constants are
/// printed with round-trip precision.
std::string to_string(const Expr& e);

/// Value, gradient and Hessian at `point` (one Jet2 variable per coordinate).
Jet2 eval_jet2(const Expr& e, std::span<const double> point);

/// Value only.
double eval(const Expr& e, std::span<const double> point);

/// Symbolic partial derivative with respect to variable `index` (0-based),
/// with folding of zero and unit constants only.
Expr differentiate(const Expr& e, std::size_t index);

const char* function_name(Expr::Func f);

}  // namespace nsr

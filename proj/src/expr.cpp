#include "nsr/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace nsr {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::size_t index = 0;
  int exponent = 0;
  Func func = Func::Sin;
  Expr lhs{nullptr};
  Expr rhs{nullptr};
  std::size_t arity = 0;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

}  // namespace

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->index = index;
  n->arity = index + 1;
  return Expr(std::move(n));
}

namespace {

Expr make_unary(Expr::Kind kind, const Expr& a, Expr::Func f, int k);
Expr make_binary(Expr::Kind kind, const Expr& a, const Expr& b);

}  // namespace

Expr Expr::function(Func f, Expr arg) { return make_unary(Kind::Function, arg, f, 0); }

Expr Expr::power(Expr base, int exponent) {
  return make_unary(Kind::Power, base, Func::Sin, exponent);
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
std::size_t Expr::variable_index() const { return node_->index; }
int Expr::exponent() const { return node_->exponent; }
Expr::Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return node_->lhs; }
const Expr& Expr::rhs() const { return node_->rhs; }
std::size_t Expr::arity() const { return node_->arity; }

bool Expr::is_constant(double c) const {
  return node_->kind == Kind::Constant && node_->value == c;
}

// The raw constructors live in Expr's scope through these helpers; the
// public operators below fold trivial constants.
class ExprBuilder {
 public:
  static Expr unary(Expr::Kind kind, const Expr& a, Expr::Func f, int k) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->lhs = a;
    n->func = f;
    n->exponent = k;
    n->arity = a.arity();
    return Expr(std::move(n));
  }
  static Expr binary(Expr::Kind kind, const Expr& a, const Expr& b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->lhs = a;
    n->rhs = b;
    n->arity = std::max(a.arity(), b.arity());
    return Expr(std::move(n));
  }
};

namespace {

Expr make_unary(Expr::Kind kind, const Expr& a, Expr::Func f, int k) {
  return ExprBuilder::unary(kind, a, f, k);
}

Expr make_binary(Expr::Kind kind, const Expr& a, const Expr& b) {
  return ExprBuilder::binary(kind, a, b);
}

bool both_constant(const Expr& a, const Expr& b) {
  return a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Constant;
}

}  // namespace

Expr operator-(const Expr& a) {
  if (a.kind() == Expr::Kind::Constant) return Expr::constant(-a.constant_value());
  if (a.kind() == Expr::Kind::Negate) return a.lhs();
  return make_unary(Expr::Kind::Negate, a, Expr::Func::Sin, 0);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (both_constant(a, b)) return Expr::constant(a.constant_value() + b.constant_value());
  return make_binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (both_constant(a, b)) return Expr::constant(a.constant_value() - b.constant_value());
  return make_binary(Expr::Kind::Subtract, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (both_constant(a, b)) return Expr::constant(a.constant_value() * b.constant_value());
  return make_binary(Expr::Kind::Multiply, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  return make_binary(Expr::Kind::Divide, a, b);
}

const char* function_name(Expr::Func f) {
  switch (f) {
    case Expr::Func::Sin: return "sin";
    case Expr::Func::Cos: return "cos";
    case Expr::Func::Exp: return "exp";
    case Expr::Func::Log: return "log";
    case Expr::Func::Sqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size())
        throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make_binary(Expr::Kind::Add, e, parse_term());
      else if (accept('-'))
        e = make_binary(Expr::Kind::Subtract, e, parse_term());
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (accept('*'))
        e = make_binary(Expr::Kind::Multiply, e, parse_factor());
      else if (accept('/'))
        e = make_binary(Expr::Kind::Divide, e, parse_factor());
      else
        return e;
    }
  }

  Expr parse_factor() {
    Expr b = parse_base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) throw ParseError("expected integer exponent", start);
      int k = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
      if (ec != std::errc()) throw ParseError("exponent out of range", digits);
      return make_unary(Expr::Kind::Power, b, Expr::Func::Sin, negative ? -k : k);
    }
    return b;
  }

  Expr parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make_unary(Expr::Kind::Negate, parse_base(), Expr::Func::Sin, 0);
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent in number", mark);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start);
    return Expr::constant(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec != std::errc() || idx < 1 || idx > n_)
        throw ParseError("variable index out of range 1.." + std::to_string(n_) + ": '" +
                             std::string(name) + "'",
                         start);
      return Expr::variable(idx - 1);
    }

    static constexpr Expr::Func funcs[] = {Expr::Func::Sin, Expr::Func::Cos, Expr::Func::Exp,
                                          Expr::Func::Log, Expr::Func::Sqrt};
    for (Expr::Func f : funcs) {
      if (name == function_name(f)) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return make_unary(Expr::Kind::Function, arg, f, 0);
      }
    }
    throw ParseError("unknown name '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::size_t n) { return Parser(text, n).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest form that still round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: {
      const double v = e.constant_value();
      if (std::signbit(v)) {
        out += "(-";
        out += format_number(-v);
        out += ')';
      } else {
        out += format_number(v);
      }
      return;
    }
    case K::Variable:
      out += 'x';
      out += std::to_string(e.variable_index() + 1);
      return;
    case K::Negate:
      out += "(-";
      print(e.lhs(), out);
      out += ')';
      return;
    case K::Power:
      out += '(';
      print(e.lhs(), out);
      out += '^';
      out += std::to_string(e.exponent());
      out += ')';
      return;
    case K::Function:
      out += function_name(e.func());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
    case K::Add:
    case K::Subtract:
    case K::Multiply:
    case K::Divide: {
      static constexpr const char* ops[] = {" + ", " - ", " * ", " / "};
      out += '(';
      print(e.lhs(), out);
      out += ops[static_cast<int>(e.kind()) - static_cast<int>(K::Add)];
      print(e.rhs(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <typename T>
struct Evaluator;

template <>
struct Evaluator<Jet2> {
  std::span<const double> p;

  Jet2 constant(double c) const { return Jet2(c, p.size()); }
  Jet2 variable(std::size_t i) const { return Jet2::variable(p[i], i, p.size()); }
  static double value(const Jet2& j) { return j.value(); }
};

template <>
struct Evaluator<double> {
  std::span<const double> p;

  double constant(double c) const { return c; }
  double variable(std::size_t i) const { return p[i]; }
  static double value(double v) { return v; }
};

double apply(Expr::Func f, double x) {
  switch (f) {
    case Expr::Func::Sin: return std::sin(x);
    case Expr::Func::Cos: return std::cos(x);
    case Expr::Func::Exp: return std::exp(x);
    case Expr::Func::Log: return std::log(x);
    case Expr::Func::Sqrt: return std::sqrt(x);
  }
  return 0.0;
}

Jet2 apply(Expr::Func f, const Jet2& x) {
  switch (f) {
    case Expr::Func::Sin: return sin(x);
    case Expr::Func::Cos: return cos(x);
    case Expr::Func::Exp: return exp(x);
    case Expr::Func::Log: return log(x);
    case Expr::Func::Sqrt: return sqrt(x);
  }
  return x;
}

double ipow(double x, int k) { return std::pow(x, k); }
Jet2 ipow(const Jet2& x, int k) { return pow(x, k); }

template <typename T>
T evaluate(const Expr& e, const Evaluator<T>& ev) {
  using K = Expr::Kind;
  auto check = [&](const T& r) -> T {
    if (!std::isfinite(Evaluator<T>::value(r))) throw DomainError("non-finite result", to_string(e));
    return r;
  };
  switch (e.kind()) {
    case K::Constant: return ev.constant(e.constant_value());
    case K::Variable:
      if (e.variable_index() >= ev.p.size())
        throw DomainError("variable outside point dimension", to_string(e));
      return ev.variable(e.variable_index());
    case K::Negate: return -evaluate(e.lhs(), ev);
    case K::Add: return evaluate(e.lhs(), ev) + evaluate(e.rhs(), ev);
    case K::Subtract: return evaluate(e.lhs(), ev) - evaluate(e.rhs(), ev);
    case K::Multiply: return check(evaluate(e.lhs(), ev) * evaluate(e.rhs(), ev));
    case K::Divide: {
      T den = evaluate(e.rhs(), ev);
      if (Evaluator<T>::value(den) == 0.0) throw DomainError("division by zero", to_string(e));
      return check(evaluate(e.lhs(), ev) / den);
    }
    case K::Power: {
      T b = evaluate(e.lhs(), ev);
      if (e.exponent() < 0 && Evaluator<T>::value(b) == 0.0)
        throw DomainError("negative power of zero", to_string(e));
      return check(ipow(b, e.exponent()));
    }
    case K::Function: {
      T a = evaluate(e.lhs(), ev);
      const double x = Evaluator<T>::value(a);
      if (e.func() == Expr::Func::Log && !(x > 0.0))
        throw DomainError("log of non-positive value", to_string(e));
      if (e.func() == Expr::Func::Sqrt && !(x > 0.0))
        throw DomainError("sqrt of non-positive value", to_string(e));
      return check(apply(e.func(), a));
    }
  }
  return ev.constant(0.0);
}

}  // namespace

Jet2 eval_jet2(const Expr& e, std::span<const double> point) {
  return evaluate(e, Evaluator<Jet2>{point});
}

double eval(const Expr& e, std::span<const double> point) {
  return evaluate(e, Evaluator<double>{point});
}

// ---------------------------------------------------------------------------
// Symbolic derivative

Expr differentiate(const Expr& e, std::size_t index) {
  using K = Expr::Kind;
  if (e.arity() <= index && e.kind() != K::Variable) return Expr::constant(0.0);
  switch (e.kind()) {
    case K::Constant: return Expr::constant(0.0);
    case K::Variable: return Expr::constant(e.variable_index() == index ? 1.0 : 0.0);
    case K::Negate: return -differentiate(e.lhs(), index);
    case K::Add: return differentiate(e.lhs(), index) + differentiate(e.rhs(), index);
    case K::Subtract: return differentiate(e.lhs(), index) - differentiate(e.rhs(), index);
    case K::Multiply:
      return differentiate(e.lhs(), index) * e.rhs() + e.lhs() * differentiate(e.rhs(), index);
    case K::Divide: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      return (differentiate(a, index) * b - a * differentiate(b, index)) / Expr::power(b, 2);
    }
    case K::Power: {
      const int k = e.exponent();
      if (k == 0) return Expr::constant(0.0);
      const Expr inner = differentiate(e.lhs(), index);
      if (k == 1) return inner;
      const Expr outer = (k - 1 == 1) ? e.lhs() : Expr::power(e.lhs(), k - 1);
      return Expr::constant(k) * outer * inner;
    }
    case K::Function: {
      const Expr& a = e.lhs();
      const Expr da = differentiate(a, index);
      if (da.is_constant(0.0)) return da;
      switch (e.func()) {
        case Expr::Func::Sin: return Expr::function(Expr::Func::Cos, a) * da;
        case Expr::Func::Cos: return -(Expr::function(Expr::Func::Sin, a) * da);
        case Expr::Func::Exp: return e * da;
        case Expr::Func::Log: return da / a;
        case Expr::Func::Sqrt: return da / (Expr::constant(2.0) * e);
      }
    }
  }
  return Expr::constant(0.0);
}

}  // namespace nsr

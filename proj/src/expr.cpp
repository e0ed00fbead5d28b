#include "hartogs/expr.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <system_error>

#include "hartogs/error.hpp"

namespace hartogs {

struct Expr::Node {
  Op op = Op::Number;
  double value = 0.0;
  Expr lhs{std::shared_ptr<const Node>{}};
  Expr rhs{std::shared_ptr<const Node>{}};
};

namespace {

const Expr& empty_expr() {
  static const Expr zero;
  return zero;
}

}  // namespace

Expr::Expr() : node_(std::make_shared<Node>()) {}

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var() {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, Expr a, Expr b, double value) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::neg(Expr a) { return make(Op::Neg, std::move(a), Expr(nullptr), 0.0); }
Expr Expr::add(Expr a, Expr b) { return make(Op::Add, std::move(a), std::move(b), 0.0); }
Expr Expr::sub(Expr a, Expr b) { return make(Op::Sub, std::move(a), std::move(b), 0.0); }
Expr Expr::mul(Expr a, Expr b) { return make(Op::Mul, std::move(a), std::move(b), 0.0); }
Expr Expr::div(Expr a, Expr b) { return make(Op::Div, std::move(a), std::move(b), 0.0); }
Expr Expr::pow(Expr base, double exponent) { return make(Op::Pow, std::move(base), Expr(nullptr), exponent); }
Expr Expr::exp(Expr a) { return make(Op::Exp, std::move(a), Expr(nullptr), 0.0); }
Expr Expr::log(Expr a) { return make(Op::Log, std::move(a), Expr(nullptr), 0.0); }

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
const Expr& Expr::lhs() const { return node_->lhs.node_ ? node_->lhs : empty_expr(); }
const Expr& Expr::rhs() const { return node_->rhs.node_ ? node_->rhs : empty_expr(); }

bool Expr::depends_on_t() const {
  switch (op()) {
    case Op::Number: return false;
    case Op::Var: return true;
    case Op::Neg:
    case Op::Pow:
    case Op::Exp:
    case Op::Log: return lhs().depends_on_t();
    default: return lhs().depends_on_t() || rhs().depends_on_t();
  }
}

std::size_t Expr::size() const {
  switch (op()) {
    case Op::Number:
    case Op::Var: return 1;
    case Op::Neg:
    case Op::Pow:
    case Op::Exp:
    case Op::Log: return 1 + lhs().size();
    default: return 1 + lhs().size() + rhs().size();
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Number: return a.value() == b.value();
    case Op::Var: return true;
    case Op::Pow: return a.value() == b.value() && a.lhs() == b.lhs();
    case Op::Neg:
    case Op::Exp:
    case Op::Log: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

double checked(double r, const char* what, double t) {
  if (!std::isfinite(r)) throw EvaluationError(std::string("non-finite result in ") + what, t);
  return r;
}

double eval(const Expr& e, double t) {
  switch (e.op()) {
    case Op::Number: return e.value();
    case Op::Var: return t;
    case Op::Neg: return -eval(e.lhs(), t);
    case Op::Add: return checked(eval(e.lhs(), t) + eval(e.rhs(), t), "addition", t);
    case Op::Sub: return checked(eval(e.lhs(), t) - eval(e.rhs(), t), "subtraction", t);
    case Op::Mul: return checked(eval(e.lhs(), t) * eval(e.rhs(), t), "multiplication", t);
    case Op::Div: {
      const double den = eval(e.rhs(), t);
      if (den == 0.0) throw EvaluationError("division by zero", t);
      return checked(eval(e.lhs(), t) / den, "division", t);
    }
    case Op::Pow: {
      const double base = eval(e.lhs(), t);
      const double p = e.value();
      if (base < 0.0 && p != std::floor(p))
        throw EvaluationError("negative base raised to non-integer power", t);
      if (base == 0.0 && p < 0.0) throw EvaluationError("zero raised to negative power", t);
      return checked(std::pow(base, p), "power", t);
    }
    case Op::Exp: return checked(std::exp(eval(e.lhs(), t)), "exp", t);
    case Op::Log: {
      const double a = eval(e.lhs(), t);
      if (a <= 0.0) throw EvaluationError("log of non-positive value", t);
      return std::log(a);
    }
  }
  return 0.0;
}

}  // namespace

double Expr::operator()(double t) const { return eval(*this, t); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw ParseError(what, pos);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool at_number() {
    skip_ws();
    return pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.');
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // 'e' belongs to something else; reported later
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(value))
      fail_at("malformed number", start);
    return value;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::add(std::move(lhs), term());
      } else if (accept('-')) {
        lhs = Expr::sub(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = signed_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::mul(std::move(lhs), signed_factor());
      } else if (accept('/')) {
        lhs = Expr::div(std::move(lhs), signed_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr signed_factor() {
    if (!accept('-')) return factor();
    // A minus directly in front of a plain literal is part of the literal.
    if (at_number()) {
      const std::size_t save = pos_;
      const double v = number();
      if (!peek('^')) return Expr::number(-v);
      pos_ = save;
    }
    return Expr::neg(signed_factor());
  }

  Expr factor() {
    Expr b = base();
    if (!accept('^')) return b;
    const std::size_t at = pos_;
    Expr exponent = simplify(signed_factor());
    if (!exponent.is_number()) fail_at("non-constant exponent", at);
    return Expr::pow(std::move(b), exponent.value());
  }

  Expr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(number());
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "t") return Expr::var();
      if (id == "exp" || id == "log") {
        expect('(');
        Expr arg = expr();
        expect(')');
        return id == "exp" ? Expr::exp(std::move(arg)) : Expr::log(std::move(arg));
      }
      fail_at("unknown identifier '" + std::string(id) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Number: return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  const int prec = precedence(e);
  switch (e.op()) {
    case Op::Number: out += format_number(e.value()); return;
    case Op::Var: out += 't'; return;
    case Op::Neg: {
      out += '-';
      const Expr& a = e.lhs();
      // "-2" would read back as a negative literal, so keep the Neg node visible.
      const bool literal = a.is_number() && !std::signbit(a.value());
      print_wrapped(a, literal || precedence(a) < prec, out);
      return;
    }
    case Op::Pow: {
      print_wrapped(e.lhs(), precedence(e.lhs()) < 5, out);
      out += '^';
      if (std::signbit(e.value())) {
        out += '(' + format_number(e.value()) + ')';
      } else {
        out += format_number(e.value());
      }
      return;
    }
    case Op::Exp:
    case Op::Log:
      out += e.op() == Op::Exp ? "exp(" : "log(";
      print(e.lhs(), out);
      out += ')';
      return;
    default: {
      const char* sym = e.op() == Op::Add   ? " + "
                        : e.op() == Op::Sub ? " - "
                        : e.op() == Op::Mul ? "*"
                                            : "/";
      print_wrapped(e.lhs(), precedence(e.lhs()) < prec, out);
      out += sym;
      print_wrapped(e.rhs(), precedence(e.rhs()) <= prec, out);
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
// Simplification and differentiation

namespace {

bool try_fold(const Expr& e, double& out) {
  try {
    out = e(0.0);
    return true;
  } catch (const EvaluationError&) {
    return false;
  }
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.op()) {
    case Op::Number:
    case Op::Var: return e;
    default: break;
  }

  const Expr a = simplify(e.lhs());
  const bool binary = e.op() == Op::Add || e.op() == Op::Sub || e.op() == Op::Mul || e.op() == Op::Div;
  const Expr b = binary ? simplify(e.rhs()) : Expr();

  Expr rebuilt;
  switch (e.op()) {
    case Op::Neg:
      if (a.op() == Op::Neg) return a.lhs();
      rebuilt = Expr::neg(a);
      break;
    case Op::Add:
      if (a.is_number(0.0)) return b;
      if (b.is_number(0.0)) return a;
      rebuilt = Expr::add(a, b);
      break;
    case Op::Sub:
      if (b.is_number(0.0)) return a;
      if (a.is_number(0.0)) return simplify(Expr::neg(b));
      rebuilt = Expr::sub(a, b);
      break;
    case Op::Mul:
      if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
      if (a.is_number(1.0)) return b;
      if (b.is_number(1.0)) return a;
      if (a.is_number(-1.0)) return simplify(Expr::neg(b));
      if (b.is_number(-1.0)) return simplify(Expr::neg(a));
      rebuilt = Expr::mul(a, b);
      break;
    case Op::Div:
      if (b.is_number(1.0)) return a;
      if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
      rebuilt = Expr::div(a, b);
      break;
    case Op::Pow:
      if (e.value() == 0.0) return Expr::number(1.0);
      if (e.value() == 1.0) return a;
      rebuilt = Expr::pow(a, e.value());
      break;
    case Op::Exp: rebuilt = Expr::exp(a); break;
    case Op::Log: rebuilt = Expr::log(a); break;
    default: return e;
  }

  if (!rebuilt.depends_on_t()) {
    double v = 0.0;
    if (try_fold(rebuilt, v)) return Expr::number(v == 0.0 ? 0.0 : v);
  }
  return rebuilt;
}

namespace {

Expr d(const Expr& e) {
  switch (e.op()) {
    case Op::Number: return Expr::number(0.0);
    case Op::Var: return Expr::number(1.0);
    case Op::Neg: return Expr::neg(d(e.lhs()));
    case Op::Add: return Expr::add(d(e.lhs()), d(e.rhs()));
    case Op::Sub: return Expr::sub(d(e.lhs()), d(e.rhs()));
    case Op::Mul:
      return Expr::add(Expr::mul(d(e.lhs()), e.rhs()), Expr::mul(e.lhs(), d(e.rhs())));
    case Op::Div:
      return Expr::div(
          Expr::sub(Expr::mul(d(e.lhs()), e.rhs()), Expr::mul(e.lhs(), d(e.rhs()))),
          Expr::pow(e.rhs(), 2.0));
    case Op::Pow:
      return Expr::mul(Expr::mul(Expr::number(e.value()), Expr::pow(e.lhs(), e.value() - 1.0)),
                       d(e.lhs()));
    case Op::Exp: return Expr::mul(e, d(e.lhs()));
    case Op::Log: return Expr::div(d(e.lhs()), e.lhs());
  }
  return Expr::number(0.0);
}

}  // namespace

Expr derivative(const Expr& e) { return simplify(d(simplify(e))); }

}  // namespace hartogs

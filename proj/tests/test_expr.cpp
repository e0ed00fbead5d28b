#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "hartogs/error.hpp"
#include "hartogs/expr.hpp"
#include "support.hpp"

using namespace hartogs;

TEST_CASE("literals, variable and operator precedence") {
  CHECK(parse_expr("2")(0.0) == 2.0);
  CHECK(parse_expr("t")(3.5) == 3.5);
  CHECK(parse_expr("1 + 2*t")(2.0) == 5.0);
  CHECK(parse_expr("(1 + 2)*t")(2.0) == 6.0);
  CHECK(parse_expr("2*t^2")(3.0) == 18.0);
  CHECK(parse_expr("-t^2")(3.0) == -9.0);
  CHECK(parse_expr("2^-1")(0.0) == 0.5);
  CHECK(parse_expr("t^2^3")(2.0) == 256.0);  // right associative
  CHECK(parse_expr("8/2/2")(0.0) == 2.0);    // left associative
  CHECK(parse_expr("1 - 2 - 3")(0.0) == -4.0);
  CHECK(parse_expr("1.5e1 + .5")(0.0) == 15.5);
  CHECK(parse_expr("  exp ( 0 )  ")(0.0) == 1.0);
  CHECK(parse_expr("log(exp(t))")(1.25) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(parse_expr("1 - -t")(2.0) == 3.0);
}

TEST_CASE("minus in front of a literal is part of the literal unless a power follows") {
  const Expr a = parse_expr("-2*t");
  CHECK(a.op() == Op::Mul);
  CHECK(a.lhs().is_number(-2.0));
  const Expr b = parse_expr("-2^2");
  CHECK(b.op() == Op::Neg);
  CHECK(b(0.0) == -4.0);
}

TEST_CASE("exponents must be constant") {
  CHECK(parse_expr("t^(1/2)")(4.0) == doctest::Approx(2.0));
  CHECK(parse_expr("t^(-(3))")(2.0) == doctest::Approx(0.125));
  CHECK_THROWS_AS(parse_expr("2^t"), ParseError);
}

TEST_CASE("parse errors carry the byte offset") {
  auto position = [](const std::string& src) -> long {
    try {
      parse_expr(src);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position("1 -") == 3);
  CHECK(position("1 + x") == 4);
  CHECK(position("sin(t)") == 0);
  CHECK(position("(1 + t") == 6);
  CHECK(position("1 + t)") == 5);
  CHECK(position("2^t") == 2);
  CHECK(position("1..2") == 2);
  CHECK(position("") == 0);
  CHECK(position("t t") == 2);
  CHECK(position("exp t") == 4);
  CHECK(position("1 # 2") == 2);
}

TEST_CASE("evaluation guards") {
  CHECK_THROWS_AS(parse_expr("1/t")(0.0), EvaluationError);
  CHECK_THROWS_AS(parse_expr("log(t)")(0.0), EvaluationError);
  CHECK_THROWS_AS(parse_expr("log(t - 1)")(0.5), EvaluationError);
  CHECK_THROWS_AS(parse_expr("(t - 1)^0.5")(0.5), EvaluationError);
  CHECK_THROWS_AS(parse_expr("t^(-1)")(0.0), EvaluationError);
  CHECK_THROWS_AS(parse_expr("exp(t)")(1000.0), EvaluationError);
  CHECK(parse_expr("(t - 1)^3")(0.0) == -1.0);  // integer powers of negatives are fine
  try {
    parse_expr("log(t)")(-2.0);
  } catch (const EvaluationError& e) {
    CHECK(e.t() == -2.0);
  }
}

TEST_CASE("symbolic derivatives match hand differentiation") {
  const double e2 = std::exp(-2.0);
  const Expr f = parse_expr("exp(-2*t)");
  CHECK(derivative(f)(1.0) == doctest::Approx(-2 * e2).epsilon(1e-14));
  CHECK(derivative(derivative(f))(1.0) == doctest::Approx(4 * e2).epsilon(1e-14));

  const Expr g = parse_expr("(1 + t)^(-3)");
  CHECK(derivative(g)(0.0) == doctest::Approx(-3.0));
  CHECK(derivative(derivative(g))(0.0) == doctest::Approx(12.0));
  CHECK(derivative(derivative(derivative(g)))(0.0) == doctest::Approx(-60.0));

  CHECK(derivative(parse_expr("log(1 + t^2)"))(2.0) == doctest::Approx(4.0 / 5.0));
  CHECK(derivative(parse_expr("t/(1 + t)"))(1.0) == doctest::Approx(0.25));
  CHECK(derivative(parse_expr("t*exp(t)"))(0.0) == doctest::Approx(1.0));
  CHECK(derivative(parse_expr("-t"))(5.0) == -1.0);
}

TEST_CASE("simplification folds constants and drops 0/1 identities") {
  CHECK(to_string(simplify(parse_expr("0 + t*1"))) == "t");
  CHECK(to_string(simplify(parse_expr("2*3 + t^1"))) == "6 + t");
  CHECK(simplify(parse_expr("exp(0)*log(1)")).is_number(0.0));
  CHECK(derivative(parse_expr("1 - t")).is_number(-1.0));
  CHECK(derivative(derivative(parse_expr("1 - t"))).is_number(0.0));
  CHECK(derivative(parse_expr("3")).is_number(0.0));
}

namespace {

Expr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_real_distribution<double> mag(-3.0, 3.0);
  std::uniform_int_distribution<int> small(-4, 6);
  auto literal = [&] {
    switch (small(rng) & 3) {
      case 0: return static_cast<double>(small(rng));
      case 1: return std::pow(10.0, mag(rng)) * (small(rng) < 0 ? -1.0 : 1.0);
      case 2: return 0.5 * small(rng);
      default: return std::ldexp(1.0, small(rng) * 20);
    }
  };
  switch (pick(rng)) {
    case 0: return Expr::number(literal());
    case 1: return Expr::var();
    case 2: return Expr::neg(random_tree(rng, depth - 1));
    case 3: return Expr::add(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return Expr::sub(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Expr::mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Expr::div(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return Expr::pow(random_tree(rng, depth - 1), literal());
    case 8: return Expr::exp(random_tree(rng, depth - 1));
    default: return Expr::log(random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("property: printing then parsing reproduces the tree") {
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 5000; ++k) {
    const Expr e = random_tree(rng, 5);
    const std::string text = to_string(e);
    INFO(text);
    Expr back;
    REQUIRE_NOTHROW(back = parse_expr(text));
    CHECK(back == e);
    CHECK(to_string(back) == text);
  }
}

TEST_CASE("property: the parser is total on arbitrary input") {
  const std::string alphabet = "t0123456789.e+-*/^() explog\t#x";
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> len(0, 24);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  int parsed = 0;
  for (int k = 0; k < 20000; ++k) {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[ch(rng)];
    try {
      parse_expr(s);
      ++parsed;
    } catch (const ParseError& e) {
      CHECK(e.position() <= s.size());
    }
  }
  CHECK(parsed > 0);
}

TEST_CASE("property: derivatives agree with finite differences") {
  const char* sources[] = {"exp(-0.7*t)*(2 + t)^(-1.5)", "log(3 + t)/(1 + t^2)",
                           "(2 - 0.3*t)^2.5 - t*exp(-t)", "1/(1 + exp(-t))"};
  for (const char* src : sources) {
    Expr d[4];
    d[0] = parse_expr(src);
    for (int k = 1; k < 4; ++k) d[k] = derivative(d[k - 1]);
    for (double t : {0.3, 1.1, 2.7}) {
      for (int k = 1; k < 4; ++k) {
        auto prev = [&](double x) { return d[k - 1](x); };
        INFO(src << " order " << k << " at " << t);
        CHECK(oracle::close_rel(d[k](t), oracle::d1(prev, t, 1e-3), 1e-7));
      }
    }
  }
}

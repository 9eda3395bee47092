#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cylsym/calculus.hpp"
#include "cylsym/flows.hpp"
#include "cylsym/numeval.hpp"
#include "cylsym/parser.hpp"
#include "cylsym/simplify.hpp"

using namespace cylsym;

namespace {

Expr P(const std::string& s) { return parse(s); }

// random expression trees over r, q, z, u, k with small rational constants
Expr random_expr(SplitMix64& rng, int depth) {
  int pick = static_cast<int>(rng.next() % (depth <= 0 ? 5 : 9));
  switch (pick) {
    case 0:
      return Expr::number(Rational(static_cast<long long>(rng.next() % 7) - 3,
                                   1 + static_cast<long long>(rng.next() % 3)));
    case 1:
      return Expr::symbol("r");
    case 2:
      return Expr::symbol("q");
    case 3:
      return Expr::symbol("z");
    case 4:
      return rng.next() % 2 ? Expr::symbol("k") : Expr::u();
    case 5:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 6:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 7: {
      long long e = static_cast<long long>(rng.next() % 3) + 1;
      return Expr::pow(random_expr(rng, depth - 1), Rational(e));
    }
    default: {
      const char* fn[] = {"sin", "cos", "exp"};
      return Expr::func(fn[rng.next() % 3], {random_expr(rng, depth - 1)});
    }
  }
}

double eval_at(const Expr& e, double r, double q, double z, double u, double k) {
  EvalEnv env;
  env.set("r", r).set("q", q).set("z", z).set("k", k).set_u(u);
  return eval_expr(e, env);
}

}  // namespace

TEST_CASE("parsing the reference equation") {
  Expr e = P("u_rr + (1/r)*u_r + (1/r^2)*u_qq + u_zz + k^2*u");
  CHECK(e.kind() == Kind::Sum);
  CHECK(e.kids().size() == 5);
  CHECK(contains(e, Expr::jet(JetIndex{{2, 0, 0}})));
  CHECK(contains(e, Expr::jet(JetIndex{{0, 2, 0}})));
  // round-trips through the printer
  CHECK(parse(to_string(e)) == e);
}

TEST_CASE("pythagorean pair simplifies to one") {
  Expr e = P("sin(q)^2 + cos(q)^2");
  CHECK(!simplify(e).is_one() == false);
  CHECK(simplify(e) == Expr::integer(1));
}

TEST_CASE("syntax error carries a byte offset") {
  try {
    P("u_rr +");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset == 6);
  }
}

TEST_CASE("unknown identifiers list the declared table") {
  try {
    P("bogus + r");
    FAIL("expected an unknown-identifier error");
  } catch (const UnknownIdentifierError& err) {
    CHECK(err.ident == "bogus");
    CHECK(std::string(err.what()).find("r, q, z") != std::string::npos);
  }
}

TEST_CASE("jet coordinates normalize their index order") {
  CHECK(P("u_rq") == P("u_qr"));
  CHECK(P("u_zr") == P("u_rz"));
}

TEST_CASE("theta alias and q print") {
  CHECK(P("sin(theta)") == P("sin(q)"));
}

TEST_CASE("differentiate basics") {
  CHECK(simplify(differentiate(P("1/r"), Expr::symbol("r"))) == P("-1/r^2"));
  CHECK(differentiate(P("u_q"), Expr::symbol("r")).is_zero());
  CHECK(differentiate(P("u_q"), Expr::jet(JetIndex{{0, 1, 0}})).is_one());
  // xi1 differentiated by u gives the (0,0,0,1) index
  Expr d = differentiate(Expr::unknown({0, {}}), Expr::u());
  CHECK(d == Expr::unknown({0, {0, 0, 0, 1}}));
  CHECK(to_string(d) == "xi1_u");
}

TEST_CASE("unknown derivative indices commute") {
  Expr a = differentiate(differentiate(Expr::unknown({0, {}}), Expr::symbol("r")), Expr::u());
  Expr b = differentiate(differentiate(Expr::unknown({0, {}}), Expr::u()), Expr::symbol("r"));
  CHECK(a == b);
}

TEST_CASE("substitute") {
  Expr e = P("u_rr + k^2*u");
  Expr r1 = substitute(e, {{P("u_rr"), P("-k^2*u")}});
  CHECK(simplify(r1).is_zero());
  CHECK(substitute(P("r*u_r"), {{P("r"), P("2")}, {P("u_r"), P("3")}}) == P("6"));
  Pde che = che_pde();
  CHECK(simplify(substitute(che.lhs, {{che.leading, che.solved_rhs}})).is_zero());
}

TEST_CASE("simplify examples") {
  CHECK(simplify(P("r^2*(1/r^2)*cos(q)")) == P("cos(q)"));
  CHECK(simplify(P("sin(q)*cos(q)/r - cos(q)*sin(q)/r")).is_zero());
  CHECK(simplify(P("tan(q)*cos(q)")) == P("sin(q)"));
  CHECK(simplify(P("exp(ln(r))")) == P("r"));
  CHECK(simplify(P("ln(exp(z))")) == P("z"));
  CHECK(simplify(P("sin(0-q) + sin(q)")).is_zero());
  CHECK(Expr::pow(Expr::integer(4), Rational(1, 2)) == Expr::integer(2));
}

TEST_CASE("printer round trip on random expressions") {
  SplitMix64 rng(0x5eed0001);
  for (int i = 0; i < 300; ++i) {
    Expr e = random_expr(rng, 4);
    CAPTURE(to_string(e));
    CHECK(parse(to_string(e)) == e);
  }
}

TEST_CASE("simplify is idempotent on random expressions") {
  SplitMix64 rng(0x5eed0002);
  for (int i = 0; i < 200; ++i) {
    Expr e = random_expr(rng, 4);
    Expr s1 = simplify(e);
    CHECK(simplify(s1) == s1);
  }
}

TEST_CASE("differentiate is linear and satisfies the product rule") {
  SplitMix64 rng(0x5eed0003);
  Expr r = Expr::symbol("r");
  for (int i = 0; i < 100; ++i) {
    Expr a = random_expr(rng, 3), b = random_expr(rng, 3);
    Rational ca(static_cast<long long>(rng.next() % 5) - 2,
                1 + static_cast<long long>(rng.next() % 3));
    Rational cb(static_cast<long long>(rng.next() % 5) - 2, 1);
    Expr lhs = differentiate(Expr::number(ca) * a + Expr::number(cb) * b, r);
    Expr rhs = Expr::number(ca) * differentiate(a, r) + Expr::number(cb) * differentiate(b, r);
    CHECK(simplify(lhs - rhs).is_zero());
    Expr prod_lhs = differentiate(a * b, r);
    Expr prod_rhs = differentiate(a, r) * b + a * differentiate(b, r);
    CHECK(simplify(prod_lhs - prod_rhs).is_zero());
  }
}

TEST_CASE("simplify preserves numeric value") {
  SplitMix64 rng(0x5eed0004);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    Expr e = random_expr(rng, 4);
    Expr s = simplify(e);
    double r = rng.uniform(0.5, 3.0), q = rng.uniform(0.1, 1.4), z = rng.uniform(-1, 1),
           u = rng.uniform(-1, 1), k = rng.uniform(0.5, 2.0);
    double ve, vs;
    try {
      ve = eval_at(e, r, q, z, u, k);
      vs = eval_at(s, r, q, z, u, k);
    } catch (const ExprError&) {
      continue;  // random tree hit a domain edge (division by zero etc.)
    }
    if (!std::isfinite(ve) || std::abs(ve) > 1e8) continue;
    ++checked;
    CHECK(std::abs(ve - vs) <= 1e-10 * std::max(1.0, std::abs(ve)));
  }
  CHECK(checked >= 100);
}

TEST_CASE("division by literal zero is rejected") {
  CHECK_THROWS_AS(P("1/0"), ParseError);
}

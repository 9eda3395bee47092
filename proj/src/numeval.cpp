#include "cylsym/numeval.hpp"

#include <cmath>

#include "cylsym/bessel.hpp"

namespace cylsym {

double eval_expr(const Expr& e, const EvalEnv& env) {
  switch (e.kind()) {
    case Kind::Number:
      return to_double(e.value());
    case Kind::Symbol: {
      auto it = env.symbols.find(e.node().name);
      if (it == env.symbols.end()) throw UnboundSymbolError(e.node().name);
      return it->second;
    }
    case Kind::Jet: {
      auto it = env.jets.find(e.node().jet);
      if (it == env.jets.end()) throw UnboundSymbolError(to_string(e));
      return it->second;
    }
    case Kind::Unknown:
      throw UnboundSymbolError(to_string(e));
    case Kind::Sum: {
      double s = 0;
      for (const Expr& k : e.kids()) s += eval_expr(k, env);
      return s;
    }
    case Kind::Product: {
      double p = 1;
      for (const Expr& k : e.kids()) p *= eval_expr(k, env);
      return p;
    }
    case Kind::Power: {
      double b = eval_expr(e.kids()[0], env);
      const Rational& ex = e.node().num;
      if (is_integer(ex)) {
        long long n = numerator(ex).convert_to<long long>();
        if (b == 0 && n < 0) throw EvalDomainError("division by zero");
        return std::pow(b, static_cast<double>(n));
      }
      double xd = to_double(ex);
      if (b < 0) throw EvalDomainError("fractional power of a negative base");
      return std::pow(b, xd);
    }
    case Kind::Func: {
      const std::string& f = e.node().name;
      if (f == "BesselJ" || f == "BesselY") {
        double nu = eval_expr(e.kids()[0], env);
        double x = eval_expr(e.kids()[1], env);
        try {
          return f == "BesselJ" ? bessel_j(nu, x) : bessel_y(nu, x);
        } catch (const BesselDomainError& err) {
          throw EvalDomainError(err.what());
        }
      }
      double x = eval_expr(e.kids()[0], env);
      if (f == "sin") return std::sin(x);
      if (f == "cos") return std::cos(x);
      if (f == "tan") return std::tan(x);
      if (f == "exp") return std::exp(x);
      if (f == "arctan") return std::atan(x);
      if (f == "ln") {
        if (x <= 0) throw EvalDomainError("ln of a non-positive value");
        return std::log(x);
      }
      throw ExprError("no evaluator for function " + f);
    }
  }
  throw ExprError("unreachable expression kind");
}

}  // namespace cylsym

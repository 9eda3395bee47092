#include "cylsym/calculus.hpp"

#include <vector>

namespace cylsym {

namespace {

// Slot of a base variable in the UnknownIndex derivative counts, or -1.
int unknown_slot(const Expr& v) {
  if (v.kind() == Kind::Symbol) {
    const std::string& n = v.node().name;
    if (n == "r") return 0;
    if (n == "q") return 1;
    if (n == "z") return 2;
    return -1;
  }
  if (v.kind() == Kind::Jet && v.node().jet.order() == 0) return 3;  // u
  return -1;
}

Expr chain(const std::string& f, const Expr& x) {
  if (f == "sin") return Expr::func("cos", {x});
  if (f == "cos") return -Expr::func("sin", {x});
  if (f == "tan") {
    Expr t = Expr::func("tan", {x});
    return Expr::integer(1) + t * t;
  }
  if (f == "exp") return Expr::func("exp", {x});
  if (f == "ln") return Expr::integer(1) / x;
  if (f == "arctan") return Expr::integer(1) / (Expr::integer(1) + x * x);
  throw ExprError("no derivative rule for " + f);
}

}  // namespace

Expr differentiate(const Expr& e, const Expr& v) {
  if (v.kind() != Kind::Symbol && v.kind() != Kind::Jet)
    throw ExprError("can only differentiate by a symbol or jet coordinate");
  switch (e.kind()) {
    case Kind::Number:
      return Expr();
    case Kind::Symbol:
    case Kind::Jet:
      return e == v ? Expr::integer(1) : Expr();
    case Kind::Unknown: {
      int slot = unknown_slot(v);
      if (slot < 0) return Expr();
      UnknownIndex u = e.node().ufn;
      u.d[slot]++;
      return Expr::unknown(u);
    }
    case Kind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e.kids().size());
      for (const Expr& k : e.kids()) kids.push_back(differentiate(k, v));
      return Expr::sum(std::move(kids));
    }
    case Kind::Product: {
      std::vector<Expr> terms;
      const auto& ks = e.kids();
      terms.reserve(ks.size());
      for (std::size_t i = 0; i < ks.size(); ++i) {
        Expr dk = differentiate(ks[i], v);
        if (dk.is_zero()) continue;
        std::vector<Expr> fac;
        fac.reserve(ks.size());
        for (std::size_t j = 0; j < ks.size(); ++j) fac.push_back(i == j ? dk : ks[j]);
        terms.push_back(Expr::prod(std::move(fac)));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::Power: {
      const Expr& b = e.kids()[0];
      const Rational& ex = e.node().num;
      Expr db = differentiate(b, v);
      if (db.is_zero()) return Expr();
      return Expr::number(ex) * Expr::pow(b, ex - 1) * db;
    }
    case Kind::Func: {
      const std::string& f = e.node().name;
      if (f == "BesselJ" || f == "BesselY") {
        const Expr& nu = e.kids()[0];
        const Expr& x = e.kids()[1];
        if (!differentiate(nu, v).is_zero())
          throw ExprError("cannot differentiate a Bessel function by its order");
        Expr dx = differentiate(x, v);
        if (dx.is_zero()) return Expr();
        Expr lower = Expr::func(f, {nu - Expr::integer(1), x});
        Expr upper = Expr::func(f, {nu + Expr::integer(1), x});
        return Expr::number(Rational(1, 2)) * (lower - upper) * dx;
      }
      const Expr& x = e.kids()[0];
      Expr dx = differentiate(x, v);
      if (dx.is_zero()) return Expr();
      return chain(f, x) * dx;
    }
  }
  return Expr();
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (auto it = bindings.find(e); it != bindings.end()) return it->second;
  if (e.kids().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.kids().size());
  bool changed = false;
  for (const Expr& k : e.kids()) {
    Expr nk = substitute(k, bindings);
    changed = changed || nk != k;
    kids.push_back(std::move(nk));
  }
  if (!changed) return e;
  switch (e.kind()) {
    case Kind::Func:
      return Expr::func(e.node().name, std::move(kids));
    case Kind::Power:
      return Expr::pow(kids[0], e.node().num);
    case Kind::Product:
      return Expr::prod(std::move(kids));
    case Kind::Sum:
      return Expr::sum(std::move(kids));
    default:
      return e;
  }
}

Expr substitute_unknowns(const Expr& e, const std::array<Expr, 4>& coeffs) {
  static const std::array<Expr, 4> vars = {Expr::symbol("r"), Expr::symbol("q"),
                                           Expr::symbol("z"), Expr::u()};
  if (e.kind() == Kind::Unknown) {
    const UnknownIndex& u = e.node().ufn;
    Expr out = coeffs[u.which];
    for (int slot = 0; slot < 4; ++slot)
      for (int i = 0; i < u.d[slot]; ++i) out = differentiate(out, vars[slot]);
    return out;
  }
  if (e.kids().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.kids().size());
  bool changed = false;
  for (const Expr& k : e.kids()) {
    Expr nk = substitute_unknowns(k, coeffs);
    changed = changed || nk != k;
    kids.push_back(std::move(nk));
  }
  if (!changed) return e;
  switch (e.kind()) {
    case Kind::Func:
      return Expr::func(e.node().name, std::move(kids));
    case Kind::Power:
      return Expr::pow(kids[0], e.node().num);
    case Kind::Product:
      return Expr::prod(std::move(kids));
    case Kind::Sum:
      return Expr::sum(std::move(kids));
    default:
      return e;
  }
}

}  // namespace cylsym

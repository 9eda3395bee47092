#include "cylsym/simplify.hpp"

#include <vector>

namespace cylsym {

namespace {

// Sign of the canonically-first coefficient; used to normalize f(-x).
int lead_sign(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      return e.value() < 0 ? -1 : 1;
    case Kind::Product:
      return e.kids()[0].is_number() && e.kids()[0].value() < 0 ? -1 : 1;
    case Kind::Sum:
      return lead_sign(e.kids()[0]);
    default:
      return 1;
  }
}

Expr rebuild(const Expr& e, std::vector<Expr> kids) {
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

Expr map_kids(const Expr& e, Expr (*fn)(const Expr&)) {
  if (e.kids().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.kids().size());
  bool changed = false;
  for (const Expr& k : e.kids()) {
    Expr nk = fn(k);
    changed = changed || nk != k;
    kids.push_back(std::move(nk));
  }
  if (!changed) return e;
  return rebuild(e, std::move(kids));
}

Expr rewrite(const Expr& e) {
  Expr r = map_kids(e, &rewrite);
  switch (r.kind()) {
    case Kind::Func: {
      const std::string& f = r.node().name;
      if (f == "sin" || f == "cos" || f == "tan") {
        const Expr& a = r.kids()[0];
        if (lead_sign(a) < 0) {
          Expr na = Expr::func(f == "tan" ? "tan" : f, {-a});
          // recurse once more so tan(-x) also splits below
          na = rewrite(na);
          return f == "cos" ? na : -na;
        }
      }
      if (f == "tan")
        return Expr::func("sin", {r.kids()[0]}) / Expr::func("cos", {r.kids()[0]});
      if (f == "exp" && r.kids()[0].kind() == Kind::Func &&
          r.kids()[0].node().name == "ln")
        return r.kids()[0].kids()[0];
      if (f == "ln" && r.kids()[0].kind() == Kind::Func &&
          r.kids()[0].node().name == "exp")
        return r.kids()[0].kids()[0];
      return r;
    }
    case Kind::Power: {
      const Expr& b = r.kids()[0];
      const Rational& ex = r.node().num;
      if (b.kind() == Kind::Func && b.node().name == "sin" && is_integer(ex) &&
          ex >= 2) {
        Integer n = numerator(ex);
        Integer m = n / 2;
        Expr cos2 = Expr::integer(1) - Expr::pow(Expr::func("cos", {b.kids()[0]}), 2);
        Expr out = Expr::pow(cos2, Rational(m));
        if ((n & 1) != 0) out = out * b;
        return out;
      }
      return r;
    }
    default:
      return r;
  }
}

Expr expand_node(const Expr& e) {
  Expr r = map_kids(e, &expand_node);
  if (r.kind() == Kind::Power) {
    const Expr& b = r.kids()[0];
    const Rational& ex = r.node().num;
    if (b.kind() == Kind::Sum && is_integer(ex) && ex >= 2 && ex <= 16) {
      long long n = numerator(ex).convert_to<long long>();
      Expr acc = b;
      for (long long i = 1; i < n; ++i) acc = expand_node(acc * b);
      return acc;
    }
    return r;
  }
  if (r.kind() == Kind::Product) {
    bool has_sum = false;
    for (const Expr& k : r.kids())
      if (k.kind() == Kind::Sum) has_sum = true;
    if (!has_sum) return r;
    std::vector<Expr> terms{Expr::integer(1)};
    for (const Expr& k : r.kids()) {
      std::vector<Expr> next;
      if (k.kind() == Kind::Sum) {
        next.reserve(terms.size() * k.kids().size());
        for (const Expr& t : terms)
          for (const Expr& s : k.kids()) next.push_back(t * s);
      } else {
        next.reserve(terms.size());
        for (const Expr& t : terms) next.push_back(t * k);
      }
      terms = std::move(next);
    }
    // products formed above can themselves contain sums again (power
    // collection may rebuild one); one more pass handles it via the fixpoint
    return Expr::sum(std::move(terms));
  }
  return r;
}

}  // namespace

Expr expand(const Expr& e) { return expand_node(e); }

Expr simplify(const Expr& e) {
  Expr cur = e;
  for (int i = 0; i < 64; ++i) {
    Expr next = expand_node(rewrite(cur));
    if (next == cur) return cur;
    cur = next;
  }
  return cur;
}

}  // namespace cylsym

#include "cylsym/determining.hpp"

#include <algorithm>
#include <map>

#include "cylsym/ratlinalg.hpp"
#include "cylsym/simplify.hpp"

namespace cylsym {

namespace {

std::vector<Expr> terms_of(const Expr& e) {
  if (e.kind() == Kind::Sum) return e.kids();
  if (e.is_zero()) return {};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.kind() == Kind::Product) return e.kids();
  return {e};
}

bool is_derivative_jet(const Expr& e) {
  auto [b, ex] = base_split(e);
  (void)ex;
  return b.kind() == Kind::Jet && b.node().jet.order() >= 1;
}

// Splits one canonical term into (jet monomial, coefficient part).
std::pair<Expr, Expr> split_term(const Expr& term) {
  std::vector<Expr> jets, rest;
  for (const Expr& f : factors_of(term)) {
    if (is_derivative_jet(f))
      jets.push_back(f);
    else
      rest.push_back(f);
  }
  return {Expr::prod(std::move(jets)), Expr::prod(std::move(rest))};
}

// Minimal exponent of r across the terms of e (0 when r is absent).
Rational min_r_exponent(const Expr& e) {
  static const Expr r = Expr::symbol("r");
  bool seen = false;
  Rational best(0);
  for (const Expr& t : terms_of(e)) {
    Rational re(0);
    for (const Expr& f : factors_of(t)) {
      auto [b, ex] = base_split(f);
      if (b == r) re = ex;
    }
    if (!seen || re < best) best = re;
    seen = true;
  }
  return best;
}

}  // namespace

Expr normalize_equation(const Expr& in) {
  Expr e = simplify(in);
  if (e.is_zero()) return e;
  Rational mr = min_r_exponent(e);
  if (mr != 0) e = simplify(e * Expr::pow(Expr::symbol("r"), -mr));
  // rational content and sign of the canonically-first term
  Rational content(0);
  for (const Expr& t : terms_of(e)) content = rat_content_gcd(content, coeff_split(t).first);
  if (content == 0) return e;
  if (coeff_split(terms_of(e).front()).first < 0) content = -content;
  if (content != 1) e = simplify(e * Expr::number(Rational(1) / content));
  return e;
}

DeterminingSystem determining_system(const Pde& pde) {
  VectorField generic(Expr::unknown({0, {}}), Expr::unknown({1, {}}),
                      Expr::unknown({2, {}}), Expr::unknown({3, {}}));
  Expr residual = invariance_residual(generic, pde);

  std::map<Expr, std::vector<Expr>, ExprLess> buckets;
  for (const Expr& t : terms_of(residual)) {
    auto [mono, coeff] = split_term(t);
    buckets[mono].push_back(coeff);
  }

  DeterminingSystem sys;
  std::vector<Expr> seen;
  for (auto& [mono, parts] : buckets) {
    Expr coeff = simplify(Expr::sum(std::move(parts)));
    if (coeff.is_zero()) continue;
    sys.by_monomial.emplace_back(mono, coeff);
    Expr norm = normalize_equation(coeff);
    if (std::find(seen.begin(), seen.end(), norm) == seen.end()) {
      seen.push_back(norm);
      sys.equations.push_back(norm);
    }
  }
  return sys;
}

bool satisfies_determining(const DeterminingSystem& sys, const VectorField& v) {
  std::array<Expr, 4> coeffs = {v.xi1, v.xi2, v.xi3, v.eta};
  for (const Expr& eq : sys.equations)
    if (!simplify(substitute_unknowns(eq, coeffs)).is_zero()) return false;
  return true;
}

bool implied_by(const DeterminingSystem& sys, const Expr& equation) {
  Expr target = normalize_equation(equation);
  if (target.is_zero()) return true;

  // vectorize every equation over its non-numeric term monomials
  std::map<Expr, std::size_t, ExprLess> atom_index;
  auto vectorize = [&](const Expr& e, bool grow) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const Expr& t : terms_of(e)) {
      auto [c, mono] = coeff_split(t);
      auto it = atom_index.find(mono);
      if (it == atom_index.end()) {
        if (!grow) return std::vector<std::pair<std::size_t, Rational>>{};
        it = atom_index.emplace(mono, atom_index.size()).first;
      }
      out.emplace_back(it->second, c);
    }
    return out;
  };

  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  for (const Expr& eq : sys.equations) rows.push_back(vectorize(eq, true));
  auto tv = vectorize(target, true);

  std::size_t cols = atom_index.size();
  RatMat m;
  for (auto& sparse : rows) {
    RatVec row = rat_vec(cols);
    for (auto& [i, c] : sparse) row[i] += c;
    m.push_back(std::move(row));
  }
  RatVec v = rat_vec(cols);
  for (auto& [i, c] : tv) v[i] += c;
  return in_span(m, v);
}

}  // namespace cylsym

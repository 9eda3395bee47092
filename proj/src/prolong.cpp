#include "cylsym/prolong.hpp"

#include <set>

#include "cylsym/simplify.hpp"

namespace cylsym {

namespace {

const Expr kBase[3] = {Expr::symbol("r"), Expr::symbol("q"), Expr::symbol("z")};

void collect_jets(const Expr& e, std::set<JetIndex>& out, bool& has_unknown) {
  if (e.kind() == Kind::Jet) out.insert(e.node().jet);
  if (e.kind() == Kind::Unknown) has_unknown = true;
  for (const Expr& k : e.kids()) collect_jets(k, out, has_unknown);
}

int max_jet_order(const Expr& e) {
  int m = -1;
  std::set<JetIndex> js;
  bool dummy = false;
  collect_jets(e, js, dummy);
  for (const auto& j : js) m = std::max(m, j.order());
  return m;
}

Expr total_derivative_impl(const Expr& e, int dir, int max_order) {
  std::set<JetIndex> jets;
  bool has_unknown = false;
  collect_jets(e, jets, has_unknown);
  if (has_unknown) jets.insert(JetIndex{});  // unknowns depend on u
  Expr res = differentiate(e, kBase[dir]);
  for (const JetIndex& j : jets) {
    Expr de = differentiate(e, Expr::jet(j));
    if (de.is_zero()) continue;
    if (j.order() + 1 > max_order)
      throw OrderOverflow("total derivative would need a jet coordinate of order " +
                          std::to_string(j.order() + 1));
    res = res + Expr::jet(jet_plus(j, dir)) * de;
  }
  return res;
}

}  // namespace

VectorField::VectorField(Expr x1, Expr x2, Expr x3, Expr e)
    : xi1(std::move(x1)), xi2(std::move(x2)), xi3(std::move(x3)), eta(std::move(e)) {
  for (const Expr* c : {&xi1, &xi2, &xi3, &eta})
    if (max_jet_order(*c) >= 1)
      throw ExprError("vector-field coefficients must not contain jet coordinates");
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.xi1 + b.xi1, a.xi2 + b.xi2, a.xi3 + b.xi3, a.eta + b.eta);
}

VectorField operator*(const Rational& c, const VectorField& v) {
  Expr e = Expr::number(c);
  return VectorField(e * v.xi1, e * v.xi2, e * v.xi3, e * v.eta);
}

bool operator==(const VectorField& a, const VectorField& b) {
  return simplify(a.xi1 - b.xi1).is_zero() && simplify(a.xi2 - b.xi2).is_zero() &&
         simplify(a.xi3 - b.xi3).is_zero() && simplify(a.eta - b.eta).is_zero();
}

Pde Pde::solve_for(const Expr& lhs, const Expr& leading_jet) {
  if (leading_jet.kind() != Kind::Jet || leading_jet.node().jet.order() != 2)
    throw ExprError("leading derivative must be a second-order jet coordinate");
  Expr a = simplify(differentiate(lhs, leading_jet));
  if (a.is_zero()) throw ExprError("lhs does not contain the leading derivative");
  if (!simplify(differentiate(a, leading_jet)).is_zero() || contains(a, leading_jet))
    throw ExprError("lhs is not affine in the leading derivative");
  Expr b = simplify(substitute(lhs, {{leading_jet, Expr()}}));
  Pde p;
  p.lhs = lhs;
  p.leading = leading_jet;
  p.solved_rhs = simplify(-b / a);
  if (!simplify(substitute(lhs, {{leading_jet, p.solved_rhs}})).is_zero())
    throw ExprError("on-shell substitution check failed");
  return p;
}

Expr total_derivative(const Expr& e, int dir) {
  if (max_jet_order(e) > 1)
    throw OrderOverflow("total derivative input carries jets above order 1");
  return total_derivative_impl(e, dir, 2);
}

Expr characteristic(const VectorField& v) {
  return simplify(v.eta - v.xi1 * Expr::jet(jet_step(0)) - v.xi2 * Expr::jet(jet_step(1)) -
                  v.xi3 * Expr::jet(jet_step(2)));
}

ProlongedField prolong2(const VectorField& v) {
  ProlongedField out;
  out.base = v;
  Expr q = characteristic(v);
  // first order: the characteristic formula directly
  for (int i = 0; i < 3; ++i) {
    Expr coeff = total_derivative_impl(q, i, 2);
    for (int m = 0; m < 3; ++m)
      coeff = coeff + v.xi(m) * Expr::jet(jet_plus(jet_step(m), i));
    out.coeffs[jet_step(i)] = simplify(coeff);
  }
  // second order: recursion, staying at jet order <= 2
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Expr coeff = total_derivative_impl(out.coeffs[jet_step(i)], j, 2);
      for (int m = 0; m < 3; ++m)
        coeff = coeff - total_derivative_impl(v.xi(m), j, 1) *
                            Expr::jet(jet_plus(jet_step(i), m));
      out.coeffs[jet_plus(jet_step(i), j)] = simplify(coeff);
    }
  }
  return out;
}

Expr invariance_residual(const VectorField& v, const Pde& pde) {
  ProlongedField pr = prolong2(v);
  Expr act = v.xi1 * differentiate(pde.lhs, kBase[0]) +
             v.xi2 * differentiate(pde.lhs, kBase[1]) +
             v.xi3 * differentiate(pde.lhs, kBase[2]) +
             v.eta * differentiate(pde.lhs, Expr::u());
  for (const auto& [j, c] : pr.coeffs) act = act + c * differentiate(pde.lhs, Expr::jet(j));
  act = substitute(expand(act), {{pde.leading, pde.solved_rhs}});
  return simplify(act);
}

}  // namespace cylsym

#pragma once

#include <map>

#include "cylsym/calculus.hpp"
#include "cylsym/expr.hpp"

namespace cylsym {

struct OrderOverflow : ExprError {
  using ExprError::ExprError;
};

// Point-symmetry generator xi1 d/dr + xi2 d/dq + xi3 d/dz + eta d/du.
// Coefficients live on the base space (r, q, z, u): no jets of order >= 1.
struct VectorField {
  Expr xi1, xi2, xi3, eta;

  VectorField() = default;
  VectorField(Expr x1, Expr x2, Expr x3, Expr e);

  const Expr& xi(int i) const { return i == 0 ? xi1 : i == 1 ? xi2 : xi3; }
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const Rational& c, const VectorField& v);
bool operator==(const VectorField& a, const VectorField& b);

// A scalar PDE lhs = 0 solved for one leading second-order jet coordinate;
// lhs must be affine in that coordinate.
struct Pde {
  Expr lhs;
  Expr leading;     // jet coordinate node
  Expr solved_rhs;  // leading == solved_rhs on shell

  static Pde solve_for(const Expr& lhs, const Expr& leading_jet);
};

// Total derivative D_i e = d_i e + sum_J u_{J,i} * de/du_J (u included as the
// order-zero jet). Input may carry jets up to order 1; output up to order 2.
// Throws OrderOverflow if an order-3 coordinate would be required.
Expr total_derivative(const Expr& e, int dir);

// Characteristic Q = eta - xi1 u_r - xi2 u_q - xi3 u_z.
Expr characteristic(const VectorField& v);

struct ProlongedField {
  VectorField base;
  std::map<JetIndex, Expr> coeffs;  // all nine indices with 1 <= |J| <= 2
};

// Second prolongation; first-order coefficients via the characteristic
// formula, second order via the recursion
//   eta_{J,i} = D_i eta_J - sum_m (D_i xi^m) u_{J,m},
// which never needs jets beyond order 2.
ProlongedField prolong2(const VectorField& v);

// Applies the prolonged field to pde.lhs, restricts to the equation manifold
// by substituting the leading derivative, and simplifies. Zero iff v is a
// symmetry (up to the simplifier's strength).
Expr invariance_residual(const VectorField& v, const Pde& pde);

}  // namespace cylsym

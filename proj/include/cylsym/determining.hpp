#pragma once

#include <vector>

#include "cylsym/prolong.hpp"

namespace cylsym {

struct DeterminingSystem {
  // Normalized equations (each == 0): denominators cleared by the minimal
  // power of r, rational content divided out, leading term positive,
  // structurally deduplicated.
  std::vector<Expr> equations;
  // Raw coefficient per jet monomial before normalization, for reporting.
  std::vector<std::pair<Expr, Expr>> by_monomial;
};

// Builds the invariance residual for the generic ansatz with undetermined
// coefficients xi1(r,q,z,u), ..., eta(r,q,z,u), collects it as a polynomial
// in the jet coordinates of order >= 1 and returns the coefficient system.
DeterminingSystem determining_system(const Pde& pde);

// Substitutes concrete coefficients into every equation; true iff all vanish.
bool satisfies_determining(const DeterminingSystem& sys, const VectorField& v);

// Exact linear-span test over the rationals: is `equation` (== 0) a rational
// linear combination of the generated equations? Terms are vectorized over
// their non-numeric factors.
bool implied_by(const DeterminingSystem& sys, const Expr& equation);

// r-denominator clearing + content normalization used for the system; also
// applied to externally supplied equations before comparison.
Expr normalize_equation(const Expr& e);

}  // namespace cylsym

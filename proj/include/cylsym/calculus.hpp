#pragma once

#include <array>
#include <map>

#include "cylsym/expr.hpp"

namespace cylsym {

// Formal partial derivative. v must be a Symbol or a Jet coordinate (u is the
// order-zero jet); jet coordinates are mutually independent. Derivatives of
// the undetermined coefficients xi1..eta increment the multi-index for
// v in {r, q, z, u} and vanish for higher jets and other symbols.
Expr differentiate(const Expr& e, const Expr& v);

using Bindings = std::map<Expr, Expr, ExprLess>;

// Simultaneous structural substitution followed by canonicalization. Keys are
// matched as whole subtrees (intended for symbols and jet coordinates).
Expr substitute(const Expr& e, const Bindings& bindings);

// Replaces every xi1/xi2/xi3/eta derivative node by the corresponding formal
// derivative of the given concrete coefficient expressions.
Expr substitute_unknowns(const Expr& e, const std::array<Expr, 4>& coeffs);

}  // namespace cylsym

#pragma once

#include "cylsym/expr.hpp"

namespace cylsym {

// Fixed point of the rewrite system: rational folding and like-term
// collection (already done by the canonical builders), full distribution of
// products over sums, integer powers of sums expanded, tan x -> sin x/cos x,
// exp/ln inverse pairs, odd/even argument sign normalization for sin/cos/tan,
// and reduction of sin^n (n >= 2) through sin^2 = 1 - cos^2. On expressions
// that are polynomial in jets, r-powers and a single trigonometric angle this
// is a normal form: such an expression is identically zero iff simplify
// returns the zero node.
Expr simplify(const Expr& e);

// One expansion pass (products distributed over sums; integer powers of sums
// multiplied out). Exposed for tests.
Expr expand(const Expr& e);

}  // namespace cylsym

#pragma once

#include <map>
#include <string>
#include <vector>

#include "cylsym/prolong.hpp"

namespace cylsym {

// Built-in reference equation u_rr + (1/r)u_r + (1/r^2)u_qq + u_zz + k^2 u = 0
// solved for u_rr. k stays symbolic.
Pde che_pde();

// The seven-generator symmetry basis of the reference equation:
//   X1 = d_q                        X2 = d_z          X3 = u d_u
//   X4 = sin q d_r + (cos q / r) d_q
//   X5 = -cos q d_r + (sin q / r) d_q
//   X6 = -z cos q d_r + (z sin q / r) d_q + r cos q d_z
//   X7 =  z sin q d_r + (z cos q / r) d_q - r sin q d_z
const std::vector<VectorField>& che_symmetry_basis();

// Constants c1..c13 by name; absent keys are zero. Values are exact
// rationals; square roots become rational-exponent powers, so surds stay
// symbolic and evaluate exactly in doubles later.
using ConstMap = std::map<std::string, Rational>;

// General solved coefficient family over constants c1..c13 with k symbolic.
// Requires c2 <= 0, c3 >= 0 (the documented real-valued choice); the angular
// pair c7 e^{sqrt(c2) q} + c8 e^{-sqrt(c2) q} is taken in its real form
// (c7+c8) cos(w q) + (c7-c8) sin(w q), w = sqrt(-c2). The radial factor is
// c11 BesselY(w, a r) + c12 BesselJ(w, a r) with a = sqrt(c3 + k^2).
VectorField solved_coefficient_field(const ConstMap& c);

// First-integral expressions of the characteristic system for the same
// constant family. invariant_I2 has two variants: the radial Bessel argument
// as printed (constant, no r) and the r-carrying reading.
Expr invariant_I1(const ConstMap& c);
Expr invariant_I2(const ConstMap& c, bool bessel_arg_with_r);
Expr invariant_I3(const ConstMap& c);

Rational const_or_zero(const ConstMap& c, const std::string& name);

}  // namespace cylsym

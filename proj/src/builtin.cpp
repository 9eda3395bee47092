#include "cylsym/builtin.hpp"

#include "cylsym/parser.hpp"
#include "cylsym/simplify.hpp"

namespace cylsym {

namespace {

Expr E(const std::string& s) { return parse(s); }

}  // namespace

Pde che_pde() {
  static const Pde pde = Pde::solve_for(
      E("u_rr + (1/r)*u_r + (1/r^2)*u_qq + u_zz + k^2*u"), E("u_rr"));
  return pde;
}

const std::vector<VectorField>& che_symmetry_basis() {
  static const std::vector<VectorField> basis = [] {
    Expr zero;
    std::vector<VectorField> b;
    b.emplace_back(zero, E("1"), zero, zero);                                  // X1
    b.emplace_back(zero, zero, E("1"), zero);                                  // X2
    b.emplace_back(zero, zero, zero, E("u"));                                  // X3
    b.emplace_back(E("sin(q)"), E("cos(q)/r"), zero, zero);                    // X4
    b.emplace_back(E("-cos(q)"), E("sin(q)/r"), zero, zero);                   // X5
    b.emplace_back(E("-z*cos(q)"), E("z*sin(q)/r"), E("r*cos(q)"), zero);      // X6
    b.emplace_back(E("z*sin(q)"), E("z*cos(q)/r"), E("-r*sin(q)"), zero);      // X7
    return b;
  }();
  return basis;
}

Rational const_or_zero(const ConstMap& c, const std::string& name) {
  auto it = c.find(name);
  return it == c.end() ? Rational(0) : it->second;
}

namespace {

Expr num(const Rational& q) { return Expr::number(q); }
const Expr r = Expr::symbol("r");
const Expr q_ = Expr::symbol("q");
const Expr z = Expr::symbol("z");
const Expr k = Expr::symbol("k");

struct Family {
  Rational c[14];
  explicit Family(const ConstMap& m) {
    for (int i = 1; i <= 13; ++i) c[i] = const_or_zero(m, "c" + std::to_string(i));
    if (c[2] > 0) throw ExprError("solved coefficient family requires c2 <= 0");
    if (c[3] < 0) throw ExprError("solved coefficient family requires c3 >= 0");
  }
  Expr w() const { return Expr::pow(num(-c[2]), Rational(1, 2)); }      // sqrt(-c2)
  Expr sc3() const { return Expr::pow(num(c[3]), Rational(1, 2)); }    // sqrt(c3)
  Expr radial_arg() const {                                            // sqrt(c3+k^2)
    return Expr::pow(num(c[3]) + k * k, Rational(1, 2));
  }
  // real reading of c7 e^{sqrt(c2) q} + c8 e^{-sqrt(c2) q}
  Expr theta_factor() const {
    if (c[2] == 0) return num(c[7] + c[8]);
    Expr wq = w() * q_;
    return num(c[7] + c[8]) * Expr::func("cos", {wq}) +
           num(c[7] - c[8]) * Expr::func("sin", {wq});
  }
  Expr z_factor() const {
    if (c[3] == 0) return num(c[9] + c[10]);
    Expr sz = sc3() * z;
    return num(c[9]) * Expr::func("exp", {sz}) + num(c[10]) * Expr::func("exp", {-sz});
  }
  Expr radial_factor(const Expr& arg) const {
    Expr out;
    if (c[11] != 0) out = out + num(c[11]) * Expr::func("BesselY", {w(), arg});
    if (c[12] != 0) out = out + num(c[12]) * Expr::func("BesselJ", {w(), arg});
    return out;
  }
};

}  // namespace

VectorField solved_coefficient_field(const ConstMap& m) {
  Family f(m);
  Expr sinq = Expr::func("sin", {q_});
  Expr cosq = Expr::func("cos", {q_});
  Expr xi1 = (num(f.c[1]) * z + num(f.c[3])) * sinq + (num(f.c[2]) * z + num(f.c[4])) * cosq;
  Expr xi2 = (num(-f.c[2]) * z - num(f.c[4])) * sinq / r +
             (num(f.c[1]) * z + num(f.c[3])) * cosq / r + num(f.c[5]);
  Expr xi3 = -r * (num(f.c[1]) * sinq + num(f.c[2]) * cosq) + num(f.c[6]);
  Expr eta = f.theta_factor() * f.z_factor() * f.radial_factor(f.radial_arg() * r) +
             num(f.c[13]) * Expr::u();
  return VectorField(simplify(xi1), simplify(xi2), simplify(xi3), simplify(eta));
}

Expr invariant_I1(const ConstMap& m) {
  Family f(m);
  Expr sinq = Expr::func("sin", {q_});
  Expr cosq = Expr::func("cos", {q_});
  Expr numr = (num(f.c[1]) * sinq + num(f.c[2]) * cosq) * r * r + num(f.c[6]) * r;
  Expr den = (num(f.c[1]) * z + num(f.c[3])) * sinq + (num(f.c[2]) * z + num(f.c[4])) * cosq;
  return num(Rational(2)) * z + numr / den;
}

Expr invariant_I2(const ConstMap& m, bool bessel_arg_with_r) {
  Family f(m);
  if (f.c[13] == 0) throw ExprError("I2 requires c13 != 0");
  Expr sinq = Expr::func("sin", {q_});
  Expr cosq = Expr::func("cos", {q_});
  Expr arg = bessel_arg_with_r ? f.radial_arg() * r : f.radial_arg();
  // (c7 c9 e^{wq+sz} + c7 c10 e^{wq-sz} + c8 c9 e^{-wq+sz} + c8 c10 e^{-wq-sz})
  // in the same real reading as the field: theta factor pairs to trig.
  Expr exps = f.theta_factor() * f.z_factor();
  Expr inner = f.radial_factor(arg) * exps + num(f.c[13]) * Expr::u();
  Expr lnterm = Expr::func("ln", {inner});
  Expr pre = (num(f.c[1]) * sinq + num(f.c[2]) * cosq) / num(f.c[13]);
  return z - pre * lnterm;
}

Expr invariant_I3(const ConstMap& m) {
  Family f(m);
  Expr sinq = Expr::func("sin", {q_});
  Expr cosq = Expr::func("cos", {q_});
  Expr c1 = num(f.c[1]), c2 = num(f.c[2]), c3 = num(f.c[3]), c4 = num(f.c[4]),
       c5 = num(f.c[5]), c6 = num(f.c[6]);
  Expr A = c2 * c2 * z * z + num(Rational(2)) * c2 * c4 * z + c4 * c4 +
           c1 * c1 * z * z + num(Rational(2)) * c1 * c3 * z + c3 * c3;
  Expr B = Expr::pow(simplify(-num(Rational(2)) * c1 * c3 * z - c3 * c3 - c1 * c1 * z * z +
                              c5 * c5 * r * r - c2 * c2 * z * z -
                              num(Rational(2)) * c2 * c4 * z - c4 * c4),
                     Rational(1, 2));
  Expr one_over_cos1 = Expr::integer(1) / (cosq + Expr::integer(1));
  Expr C = one_over_cos1 * (c1 * z * cosq + c3 * cosq - c4 * sinq - c2 * z * sinq + c5 * r);
  Expr alpha = (c1 * z - c1 * z * cosq + c3 - c3 * cosq - c5 * r + c5 * r * cosq +
                c2 * z * sinq + c4 * sinq) /
               (B * sinq);
  Expr term1 = -(Expr::integer(1) / B) * Expr::func("arctan", {alpha}) *
               (num(Rational(2)) * c5 * (c2 * c3 - c1 * c4) * r * r * r / A +
                num(Rational(2)) * c6 * r);
  Expr term2 = r * r * (Expr::func("ln", {C}) - Expr::func("ln", {one_over_cos1})) *
               (c2 * c2 * z + c1 * c3 + c2 * c4 + c1 * c1 * z) / A;
  Expr term3 = num(Rational(2)) * r * r *
               Expr::func("arctan", {(cosq - Expr::integer(1)) / sinq}) *
               (c2 * c3 - c1 * c4) / A;
  return term1 + term2 + term3;
}

}  // namespace cylsym

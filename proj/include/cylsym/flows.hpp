#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cylsym/builtin.hpp"
#include "cylsym/numeval.hpp"

namespace cylsym {

struct SingularityApproach : ExprError {
  using ExprError::ExprError;
};
struct FormulaDomainError : ExprError {
  using ExprError::ExprError;
};

struct Point {
  double r = 1, q = 0, z = 0, u = 0;
};

struct FlowResult {
  Point endpoint;
  int steps = 0;
  double step_size = 0;
  double local_error_estimate = 0;
};

// Right-hand side (xi1, xi2, xi3, eta) evaluated at a point.
using FieldFn = std::function<void(const Point&, double out[4])>;

// Binds a symbolic field's free constants (k etc.) and evaluates it.
FieldFn field_fn(const VectorField& v, const EvalEnv& consts);

// Classical fixed-step RK4 for dX/ds = v(X); the endpoint uses 2*steps
// half-size steps and the error estimate is the step-doubling difference
// scaled by 1/15. Throws SingularityApproach if r drops below 1e-6.
FlowResult integrate_flow(const FieldFn& v, Point p0, double s, int steps);
FlowResult integrate_flow(const VectorField& v, const EvalEnv& consts, Point p0,
                          double s, int steps);

// max-norm discrepancy of flow(s) . flow(t) versus flow(s+t).
double group_law_discrepancy(const FieldFn& v, Point p0, double s, double t,
                             int steps_per_unit = 10000);

// Exact closed-form flows of the built-in generators (Cartesian rotations and
// translations pulled back to cylindrical coordinates; generator 3 scales u).
Point closed_flow(int i, Point p, double s);

// The closed-form flow expressions exactly as printed in the source tables,
// with the undefined parameter t of generators 6 and 7 read as the initial
// angle. Throws FormulaDomainError when the expression leaves its real
// domain at this point.
Point printed_flow(int i, Point p, double s);

struct FlowCheck {
  int generator = 0;
  std::string status;        // "verified" | "verified (documented print correction)"
                             // | "unverified (paper typo suspected)"
  double max_diff_closed = 0;   // implemented closed form vs integration
  double max_diff_printed = 0;  // printed formula vs integration (nan if domain error)
  std::string note;
};

// Integrates the generator flow from p0 and compares both closed forms.
FlowCheck verify_closed_form_flow(int i, Point p0, double s);

// Scalar samplers u = f(r, q, z).
using Sampler = std::function<double(double r, double q, double z)>;
Sampler sampler_cos_kz(double k);
Sampler sampler_besselj0_kr(double k);

// Residual of the reference equation for f at one point, by central
// differences (h = 1e-5 first order, 1e-4 second order).
double che_residual(const Sampler& f, double k, double r, double q, double z);

struct GridSpec {
  double r_lo = 0.9, r_hi = 2.5;
  double q_lo = 0.3, q_hi = 1.2;
  double z_lo = -0.8, z_hi = 0.8;
  int nr = 6, nq = 5, nz = 5;
};

// Transported solution g_i(s) . f (composition with the closed flow; the
// scaling generator multiplies by e^s) and its maximum equation residual over
// the grid. Grid points whose transported stencil leaves r > 0.05 are
// skipped; `used` reports how many contributed.
double transport_residual(const Sampler& f, int i, double s, double k,
                          const GridSpec& grid, int* used = nullptr);

struct InvariantSpec {
  Expr expression;
  ConstMap constants;
  double k = 1.0;
};

struct InvariantBox {
  double r_lo = 0.5, r_hi = 3.0;
  double q_lo = 0.1, q_hi = 1.4;
  double z_lo = -1.0, z_hi = 1.0;
  double u_lo = -1.0, u_hi = 1.0;
};

// max |v[I]| over `samples` seeded points of the box, with v the solved
// coefficient field for the same constants; derivatives of I by central
// differences (h = 1e-5). Throws EvalDomainError if I leaves its real domain.
double check_invariant(const InvariantSpec& spec, int samples, const InvariantBox& box,
                       std::uint64_t seed);

// Deterministic uniform double in [lo, hi) from a seeded generator.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);
};

}  // namespace cylsym

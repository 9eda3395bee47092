#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylsym/rational.hpp"

namespace cylsym {

// Immutable symbolic expression over exact rationals. Construction always
// canonicalizes: sums and products are flattened, constant-folded and sorted
// by the fixed node order below; like terms and like powers are merged.
// Structural equality therefore decides equality modulo those rules.
//
// Node order (total, stable): numbers < symbols (by name) < jet coordinates
// (by order, then multi-index) < unknown-function derivatives < function
// applications (by name, then arguments) < powers < products < sums.

enum class Kind : std::uint8_t {
  Number,   // exact rational constant
  Symbol,   // named scalar (r, q, z, k, c1, ...); theta is spelled q
  Jet,      // u and its derivative coordinates u_J, |J| <= 2
  Unknown,  // derivative of an undetermined coefficient xi1|xi2|xi3|eta
  Func,     // sin cos tan exp ln arctan BesselJ BesselY
  Power,    // base ^ rational exponent
  Product,  // n-ary, >= 2 children
  Sum,      // n-ary, >= 2 children
};

// Derivative counts with respect to (r, q, z); all-zero means u itself.
struct JetIndex {
  std::array<std::uint8_t, 3> d{0, 0, 0};
  int order() const { return d[0] + d[1] + d[2]; }
  auto operator<=>(const JetIndex&) const = default;
};

// which: 0..3 = xi1, xi2, xi3, eta; derivative counts in (r, q, z, u).
// Derivative indices commute by construction (only counts are stored).
struct UnknownIndex {
  std::uint8_t which = 0;
  std::array<std::uint8_t, 4> d{0, 0, 0, 0};
  int order() const { return d[0] + d[1] + d[2] + d[3]; }
  auto operator<=>(const UnknownIndex&) const = default;
};

class Expr;

struct ExprNode {
  Kind kind = Kind::Number;
  std::size_t hash = 0;
  Rational num;       // Number value; Power exponent
  std::string name;   // Symbol / Func
  JetIndex jet;       // Jet
  UnknownIndex ufn;   // Unknown
  std::vector<Expr> kids;  // Func args; Power base (single); Product/Sum terms
};

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Expr {
 public:
  Expr();  // zero

  static Expr number(Rational q);
  static Expr integer(long long v) { return number(Rational(v)); }
  static Expr symbol(std::string name);
  static Expr jet(JetIndex j);
  static Expr u() { return jet(JetIndex{}); }
  static Expr unknown(UnknownIndex u);
  static Expr func(const std::string& name, std::vector<Expr> args);
  static Expr pow(const Expr& base, const Rational& e);
  static Expr sum(std::vector<Expr> kids);
  static Expr prod(std::vector<Expr> kids);

  const ExprNode& node() const { return *p_; }
  const std::shared_ptr<const ExprNode>& raw() const { return p_; }
  Kind kind() const { return p_->kind; }
  const std::vector<Expr>& kids() const { return p_->kids; }
  std::size_t hash() const { return p_->hash; }

  bool is_number() const { return p_->kind == Kind::Number; }
  bool is_zero() const { return is_number() && p_->num == 0; }
  bool is_one() const { return is_number() && p_->num == 1; }
  const Rational& value() const { return p_->num; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
  static Expr make(ExprNode n);
  std::shared_ptr<const ExprNode> p_;
  friend Expr make_node(ExprNode n);
};

// -1, 0, +1 in the fixed total order.
int compare(const Expr& a, const Expr& b);

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Splits a canonical term into (rational coefficient, monomial).
std::pair<Rational, Expr> coeff_split(const Expr& e);
// Splits a factor into (base, exponent).
std::pair<Expr, Rational> base_split(const Expr& e);

// True if any subterm satisfies pred.
bool contains(const Expr& e, const Expr& sub);
bool contains_kind(const Expr& e, Kind k);

// Parseable text form (round-trips through parse up to canonical ordering).
std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

// Named jet coordinates for the three base directions.
JetIndex jet_step(int dir);                // dir 0,1,2 -> r,q,z
JetIndex jet_plus(JetIndex j, int dir);    // increment one slot

}  // namespace cylsym

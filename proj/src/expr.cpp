#include "cylsym/expr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace cylsym {

// ---------------------------------------------------------------------------
// rational helpers

Rational rat_pow(const Rational& q, const Integer& n) {
  if (n == 0) return Rational(1);
  if (q == 0 && n < 0) throw ExprError("division by zero");
  Integer e = n < 0 ? Integer(-n) : n;
  Rational base = n < 0 ? Rational(denominator(q), numerator(q)) : q;
  Rational acc(1);
  while (e > 0) {
    if ((e & 1) != 0) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::optional<Integer> exact_nth_root(const Integer& v, unsigned n) {
  if (v < 0) return std::nullopt;
  if (v == 0 || v == 1 || n == 1) return v;
  Integer lo(1), hi = v;
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    Integer p(1);
    bool over = false;
    for (unsigned i = 0; i < n; ++i) {
      p *= mid;
      if (p > v) {
        over = true;
        break;
      }
    }
    if (over)
      hi = mid - 1;
    else
      lo = mid;
  }
  Integer p(1);
  for (unsigned i = 0; i < n; ++i) p *= lo;
  if (p == v) return lo;
  return std::nullopt;
}

Rational rat_content_gcd(const Rational& a, const Rational& b) {
  Integer n = gcd(numerator(a), numerator(b));
  Integer d = lcm(denominator(a), denominator(b));
  if (n < 0) n = -n;
  if (n == 0) return Rational(0);
  return Rational(n, d);
}

std::string rat_to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

// ---------------------------------------------------------------------------
// hashing / interning

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_rational(const Rational& q) {
  std::size_t h = 0x243f6a8885a308d3ull;
  // Fold the limbs through the string form only for large values; small
  // values (the common case) convert exactly.
  if (numerator(q) >= -0x7fffffff && numerator(q) <= 0x7fffffff &&
      denominator(q) <= 0x7fffffff) {
    h = mix(h, static_cast<std::size_t>(numerator(q).convert_to<long long>()));
    h = mix(h, static_cast<std::size_t>(denominator(q).convert_to<long long>()));
  } else {
    h = mix(h, std::hash<std::string>{}(rat_to_string(q)));
  }
  return h;
}

std::size_t compute_hash(const ExprNode& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ull;
  switch (n.kind) {
    case Kind::Number:
      h = mix(h, hash_rational(n.num));
      break;
    case Kind::Symbol:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Kind::Jet:
      h = mix(h, n.jet.d[0] | (n.jet.d[1] << 8) | (n.jet.d[2] << 16));
      break;
    case Kind::Unknown:
      h = mix(h, n.ufn.which);
      h = mix(h, n.ufn.d[0] | (n.ufn.d[1] << 8) | (n.ufn.d[2] << 16) |
                     (std::size_t(n.ufn.d[3]) << 24));
      break;
    case Kind::Func:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Kind::Power:
      h = mix(h, hash_rational(n.num));
      break;
    case Kind::Product:
    case Kind::Sum:
      break;
  }
  for (const Expr& k : n.kids) h = mix(h, k.hash());
  return h;
}

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Number: return 0;
    case Kind::Symbol: return 1;
    case Kind::Jet: return 2;
    case Kind::Unknown: return 3;
    case Kind::Func: return 4;
    case Kind::Power: return 5;
    case Kind::Product: return 6;
    case Kind::Sum: return 7;
  }
  return 8;
}

const Expr kZero = Expr::number(Rational(0));
const Expr kOne = Expr::number(Rational(1));

}  // namespace

Expr make_node(ExprNode n) {
  n.hash = compute_hash(n);
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::make(ExprNode n) { return make_node(std::move(n)); }

Expr::Expr() : p_(kZero.p_ ? kZero.p_ : nullptr) {
  if (!p_) {  // during static init of kZero itself
    ExprNode n;
    n.kind = Kind::Number;
    n.num = 0;
    n.hash = compute_hash(n);
    p_ = std::make_shared<const ExprNode>(std::move(n));
  }
}

int compare(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return 0;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.kind != y.kind) return kind_rank(x.kind) < kind_rank(y.kind) ? -1 : 1;
  switch (x.kind) {
    case Kind::Number:
      if (x.num == y.num) return 0;
      return x.num < y.num ? -1 : 1;
    case Kind::Symbol:
      return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
    case Kind::Jet: {
      if (x.jet.order() != y.jet.order()) return x.jet.order() < y.jet.order() ? -1 : 1;
      if (x.jet.d == y.jet.d) return 0;
      return x.jet.d < y.jet.d ? -1 : 1;
    }
    case Kind::Unknown: {
      if (x.ufn.which != y.ufn.which) return x.ufn.which < y.ufn.which ? -1 : 1;
      if (x.ufn.d == y.ufn.d) return 0;
      return x.ufn.d < y.ufn.d ? -1 : 1;
    }
    case Kind::Func: {
      int c = x.name.compare(y.name);
      if (c != 0) return c < 0 ? -1 : 1;
      break;
    }
    case Kind::Power: {
      int c = compare(x.kids[0], y.kids[0]);
      if (c != 0) return c;
      if (x.num == y.num) return 0;
      return x.num < y.num ? -1 : 1;
    }
    case Kind::Product:
    case Kind::Sum:
      break;
  }
  // lexicographic over children
  std::size_t n = std::min(x.kids.size(), y.kids.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(x.kids[i], y.kids[i]);
    if (c != 0) return c;
  }
  if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// atomic builders

Expr Expr::number(Rational q) {
  ExprNode n;
  n.kind = Kind::Number;
  n.num = std::move(q);
  return make(std::move(n));
}

Expr Expr::symbol(std::string name) {
  ExprNode n;
  n.kind = Kind::Symbol;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::jet(JetIndex j) {
  if (j.order() > 2) throw ExprError("jet coordinates beyond order 2 are not supported");
  ExprNode n;
  n.kind = Kind::Jet;
  n.jet = j;
  return make(std::move(n));
}

Expr Expr::unknown(UnknownIndex u) {
  if (u.which > 3) throw ExprError("unknown-function id out of range");
  ExprNode n;
  n.kind = Kind::Unknown;
  n.ufn = u;
  return make(std::move(n));
}

std::pair<Rational, Expr> coeff_split(const Expr& e) {
  if (e.is_number()) return {e.value(), kOne};
  if (e.kind() == Kind::Product && e.kids()[0].is_number()) {
    const auto& ks = e.kids();
    if (ks.size() == 2) return {ks[0].value(), ks[1]};
    ExprNode n;
    n.kind = Kind::Product;
    n.kids.assign(ks.begin() + 1, ks.end());
    return {ks[0].value(), make_node(std::move(n))};
  }
  return {Rational(1), e};
}

std::pair<Expr, Rational> base_split(const Expr& e) {
  if (e.kind() == Kind::Power) return {e.kids()[0], e.node().num};
  return {e, Rational(1)};
}

// ---------------------------------------------------------------------------
// canonicalizing composite builders

Expr Expr::pow(const Expr& base, const Rational& e) {
  if (e == 0) return kOne;  // 0^0 := 1 (formal convention)
  if (e == 1) return base;
  if (base.is_one()) return kOne;
  if (base.is_zero()) {
    if (e < 0) throw ExprError("division by zero");
    return kZero;
  }
  if (base.is_number()) {
    if (is_integer(e)) return number(rat_pow(base.value(), numerator(e)));
    // try an exact rational root: b^(p/q) with b >= 0
    if (base.value() > 0) {
      unsigned q = denominator(e).convert_to<unsigned>();
      auto rn = exact_nth_root(numerator(base.value()), q);
      auto rd = exact_nth_root(denominator(base.value()), q);
      if (rn && rd) return number(rat_pow(Rational(*rn, *rd), numerator(e)));
    }
  }
  if (base.kind() == Kind::Power && is_integer(e))
    return pow(base.kids()[0], base.node().num * e);
  if (base.kind() == Kind::Product && is_integer(e)) {
    std::vector<Expr> ks;
    ks.reserve(base.kids().size());
    for (const Expr& k : base.kids()) ks.push_back(pow(k, e));
    return prod(std::move(ks));
  }
  ExprNode n;
  n.kind = Kind::Power;
  n.num = e;
  n.kids = {base};
  return make(std::move(n));
}

Expr Expr::prod(std::vector<Expr> kids) {
  Rational c(1);
  std::map<Expr, Rational, ExprLess> pows;
  bool zero = false;
  std::function<void(const Expr&)> absorb = [&](const Expr& e) {
    if (zero) return;
    if (e.kind() == Kind::Product) {
      for (const Expr& k : e.kids()) absorb(k);
      return;
    }
    if (e.is_number()) {
      c *= e.value();
      if (c == 0) zero = true;
      return;
    }
    auto [b, ex] = base_split(e);
    pows[b] += ex;
  };
  for (const Expr& k : kids) absorb(k);
  if (zero) return kZero;

  std::vector<Expr> factors;
  factors.reserve(pows.size());
  for (const auto& [b, ex] : pows) {
    if (ex == 0) continue;
    Expr f = pow(b, ex);
    if (f.is_number())
      c *= f.value();
    else
      factors.push_back(f);
  }
  if (c == 0) return kZero;
  if (factors.empty()) return number(c);
  if (c == 1 && factors.size() == 1) return factors[0];
  std::sort(factors.begin(), factors.end(), ExprLess{});
  ExprNode n;
  n.kind = Kind::Product;
  if (c != 1) n.kids.push_back(number(c));
  n.kids.insert(n.kids.end(), factors.begin(), factors.end());
  if (n.kids.size() == 1) return n.kids[0];
  return make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> kids) {
  std::map<Expr, Rational, ExprLess> terms;  // monomial -> coefficient
  std::function<void(const Expr&)> absorb = [&](const Expr& e) {
    if (e.kind() == Kind::Sum) {
      for (const Expr& k : e.kids()) absorb(k);
      return;
    }
    if (e.is_zero()) return;
    auto [c, mono] = coeff_split(e);
    terms[mono] += c;
  };
  for (const Expr& k : kids) absorb(k);

  std::vector<Expr> out;
  out.reserve(terms.size());
  for (const auto& [mono, c] : terms) {
    if (c == 0) continue;
    if (mono.is_one())
      out.push_back(number(c));
    else if (c == 1)
      out.push_back(mono);
    else
      out.push_back(prod({number(c), mono}));
  }
  if (out.empty()) return kZero;
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) {
    return compare(coeff_split(a).second, coeff_split(b).second) < 0;
  });
  ExprNode n;
  n.kind = Kind::Sum;
  n.kids = std::move(out);
  return make(std::move(n));
}

Expr Expr::func(const std::string& name, std::vector<Expr> args) {
  if (name == "sqrt") {
    if (args.size() != 1) throw ExprError("sqrt takes one argument");
    return pow(args[0], Rational(1, 2));
  }
  static const std::map<std::string, std::size_t> arity = {
      {"sin", 1}, {"cos", 1}, {"tan", 1},      {"exp", 1},
      {"ln", 1},  {"arctan", 1}, {"BesselJ", 2}, {"BesselY", 2}};
  auto it = arity.find(name);
  if (it == arity.end()) throw ExprError("unknown function: " + name);
  if (args.size() != it->second) throw ExprError(name + ": wrong number of arguments");
  const Expr& a = args.back();
  if (a.is_number() && args.size() == 1) {
    if (a.is_zero()) {
      if (name == "sin" || name == "tan" || name == "arctan") return kZero;
      if (name == "cos" || name == "exp") return kOne;
      if (name == "ln") throw ExprError("ln(0) is undefined");
    }
    if (a.is_one() && name == "ln") return kZero;
  }
  ExprNode n;
  n.kind = Kind::Func;
  n.name = name;
  n.kids = std::move(args);
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a) { return Expr::prod({Expr::integer(-1), a}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::prod({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  return Expr::prod({a, Expr::pow(b, Rational(-1))});
}

// ---------------------------------------------------------------------------
// queries

bool contains(const Expr& e, const Expr& sub) {
  if (e == sub) return true;
  for (const Expr& k : e.kids())
    if (contains(k, sub)) return true;
  return false;
}

bool contains_kind(const Expr& e, Kind k) {
  if (e.kind() == k) return true;
  for (const Expr& c : e.kids())
    if (contains_kind(c, k)) return true;
  return false;
}

JetIndex jet_step(int dir) {
  JetIndex j;
  j.d[dir] = 1;
  return j;
}

JetIndex jet_plus(JetIndex j, int dir) {
  j.d[dir]++;
  return j;
}

// ---------------------------------------------------------------------------
// printing

namespace {

constexpr int kPrecSum = 1;
constexpr int kPrecProd = 2;
constexpr int kPrecPow = 3;
constexpr int kPrecAtom = 4;

void print(std::ostream& os, const Expr& e, int parent);

std::string jet_name(const JetIndex& j) {
  if (j.order() == 0) return "u";
  std::string s = "u_";
  for (int i = 0; i < j.d[0]; ++i) s += 'r';
  for (int i = 0; i < j.d[1]; ++i) s += 'q';
  for (int i = 0; i < j.d[2]; ++i) s += 'z';
  return s;
}

std::string unknown_name(const UnknownIndex& u) {
  static const char* base[] = {"xi1", "xi2", "xi3", "eta"};
  std::string s = base[u.which];
  if (u.order() > 0) {
    s += '_';
    static const char letters[] = {'r', 'q', 'z', 'u'};
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < u.d[a]; ++i) s += letters[a];
  }
  return s;
}

void print_exponent(std::ostream& os, const Rational& e) {
  if (is_integer(e) && e > 0)
    os << numerator(e);
  else
    os << '(' << rat_to_string(e) << ')';
}

void print_product(std::ostream& os, const Expr& e, int parent) {
  Rational c(1);
  std::vector<Expr> num, den;
  auto push = [&](const Expr& f) {
    auto [b, ex] = base_split(f);
    if (ex < 0)
      den.push_back(Expr::pow(b, -ex));
    else
      num.push_back(f);
  };
  if (e.kind() == Kind::Product) {
    for (const Expr& k : e.kids()) {
      if (k.is_number())
        c = k.value();
      else
        push(k);
    }
  } else {
    push(e);
  }
  bool neg = c < 0;
  if (neg) c = -c;
  bool paren = parent > kPrecProd || (neg && parent >= kPrecProd);
  if (neg && parent >= kPrecSum && !paren) {
    // caller is a sum; sign handled by '-'
  }
  std::ostringstream body;
  bool first = true;
  if (numerator(c) != 1 || num.empty()) {
    body << numerator(c);
    first = false;
  }
  for (const Expr& f : num) {
    if (!first) body << '*';
    std::ostringstream t;
    print(t, f, kPrecProd + (f.kind() == Kind::Sum ? 10 : 0));
    body << t.str();
    first = false;
  }
  if (denominator(c) != 1) body << '/' << denominator(c);
  for (const Expr& f : den) {
    body << '/';
    std::ostringstream t;
    print(t, f, kPrecPow);  // denominators bind as single factors
    body << t.str();
  }
  std::string s = body.str();
  if (neg) s = "-" + s;
  if (paren)
    os << '(' << s << ')';
  else
    os << s;
}

void print(std::ostream& os, const Expr& e, int parent) {
  switch (e.kind()) {
    case Kind::Number: {
      const Rational& q = e.value();
      bool need = (q < 0 || !is_integer(q)) && parent >= kPrecProd;
      if (q < 0 && parent == kPrecSum) need = false;
      if (need) os << '(';
      os << rat_to_string(q);
      if (need) os << ')';
      return;
    }
    case Kind::Symbol:
      os << e.node().name;
      return;
    case Kind::Jet:
      os << jet_name(e.node().jet);
      return;
    case Kind::Unknown:
      os << unknown_name(e.node().ufn);
      return;
    case Kind::Func: {
      os << e.node().name << '(';
      bool first = true;
      for (const Expr& k : e.kids()) {
        if (!first) os << ", ";
        print(os, k, 0);
        first = false;
      }
      os << ')';
      return;
    }
    case Kind::Power: {
      const Rational& ex = e.node().num;
      if (ex < 0) {
        // print as 1/base^|ex| through the product printer
        print_product(os, e, parent);
        return;
      }
      std::ostringstream b;
      const Expr& base = e.kids()[0];
      bool bparen = base.kind() == Kind::Sum || base.kind() == Kind::Product ||
                    base.kind() == Kind::Power ||
                    (base.is_number() && (base.value() < 0 || !is_integer(base.value())));
      print(b, base, 0);
      if (bparen)
        os << '(' << b.str() << ')';
      else
        os << b.str();
      os << '^';
      print_exponent(os, ex);
      return;
    }
    case Kind::Product:
      print_product(os, e, parent);
      return;
    case Kind::Sum: {
      bool paren = parent >= kPrecProd;
      if (paren) os << '(';
      bool first = true;
      for (const Expr& t : e.kids()) {
        auto [c, mono] = coeff_split(t);
        if (!first) {
          if (c < 0) {
            os << " - ";
            Expr abs = c == -1 ? mono : Expr::prod({Expr::number(-c), mono});
            print(os, abs, kPrecSum + 1);
          } else {
            os << " + ";
            print(os, t, kPrecSum + 1);
          }
        } else {
          print(os, t, kPrecSum);
          first = false;
        }
      }
      if (paren) os << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e, 0);
  return os;
}

}  // namespace cylsym

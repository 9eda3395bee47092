#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace cylsym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// q^n for integer n; throws std::domain_error on 0^negative.
Rational rat_pow(const Rational& q, const Integer& n);

// Exact n-th root of a non-negative integer, if it exists.
std::optional<Integer> exact_nth_root(const Integer& v, unsigned n);

// gcd of |a| and |b| as a positive rational: gcd of numerators over lcm of
// denominators. gcd(0, b) = |b|.
Rational rat_content_gcd(const Rational& a, const Rational& b);

std::string rat_to_string(const Rational& q);

}  // namespace cylsym

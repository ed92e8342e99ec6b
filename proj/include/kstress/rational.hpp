#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace kstress {

/// Arbitrary-precision rational in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;

inline int sign(const Rational& x) { return sgn(x); }

/// Parses "p", "-p" or "p/q" with integer p, q and q != 0. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string format_rational(const Rational& x);

Rational dot(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);
bool is_zero(const Vec& v);

/// Smallest positive rational multiple of v with coprime integer entries
/// (zero vector is returned unchanged).
Vec primitive_integer(const Vec& v);

}  // namespace kstress

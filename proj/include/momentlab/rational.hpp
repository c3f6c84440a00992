#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <utility>
#include <vector>

namespace momentlab {

// Exact arithmetic throughout: arbitrary-precision integers and rationals
// in lowest terms with positive denominator (the GMP canonical form).
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Builds a canonical rational from a (possibly non-reduced, possibly
/// negative-denominator) integer pair. Throws std::invalid_argument on q = 0.
Rational make_rational(Int num, Int den);

/// Parses "p", "p/q" or "-p/q" (no whitespace, no decimals).
Rational parse_rational(const std::string& text);

/// Formats as "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& x);

/// Parses a comma-separated list of rationals, e.g. "1,1/2,1/3".
std::vector<Rational> parse_rational_list(const std::string& text);

Int floor_rational(const Rational& x);
Int ceil_rational(const Rational& x);

Rational pow_rational(const Rational& base, unsigned exp);

Int binomial(unsigned n, unsigned k);
Int factorial(unsigned n);

/// Writes m = s^2 * d with d squarefree (trial division up to 10^6 plus a
/// perfect-square test on the cofactor; radicands beyond that range are
/// accepted as-is). Requires m >= 1.
std::pair<Int, Int> squarefree_decompose(const Int& m);

} // namespace momentlab

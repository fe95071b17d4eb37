#ifndef AMBIENTKIT_RATIONAL_HPP
#define AMBIENTKIT_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ambientkit {

/// Arbitrary-precision rational. GMP keeps every value produced by its
/// arithmetic operators in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or an integer literal. Decimal notation, empty strings and
/// zero denominators are rejected with ParseError.
Rational parse_rational(std::string_view text);

/// p/q in lowest terms. Throws ZeroDenominator when q == 0.
Rational ratio(long p, long q);

/// Canonical "p/q" form; integers print without a denominator ("0", "-3").
std::string format_rational(const Rational& value);

/// True when the value has denominator 1.
bool is_integer(const Rational& value);

} // namespace ambientkit

#endif

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "polybound/errors.hpp"

namespace polybound {

// All scalar arithmetic in the library is exact. Int is an arbitrary
// precision integer, Rational an arbitrary precision fraction kept in
// canonical form (lowest terms, positive denominator) after every operation.
using Int = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal like "-0.125" into an exact rational.
Rational rational_from_string(const std::string& text);

/// x^e for integer e; e < 0 requires x != 0.
Rational rat_pow(const Rational& x, long e);

Int int_pow(const Int& x, unsigned long e);
Int factorial(unsigned long n);
Int binomial(unsigned long n, unsigned long k);

inline int sign(const Rational& x) { return sgn(x); }

/// floor(num/den) for exact integers, den != 0.
Int floor_div(const Int& num, const Int& den);
Int ceil_div(const Int& num, const Int& den);

/// A decimal number scaled/10^digits, used for printed bound values.
struct Decimal {
    Int scaled;
    int digits = 0;

    Rational value() const;
    std::string str() const;
};

/// Nearest decimal with `digits` fractional digits, ties to even.
/// For display only; bound values use directed rounding instead.
Decimal round_half_even(const Rational& v, int digits);

/// Largest decimal with `digits` fractional digits that is <= v.
Decimal round_down(const Rational& v, int digits);
/// Smallest decimal with `digits` fractional digits that is >= v.
Decimal round_up(const Rational& v, int digits);

std::string to_string(const Rational& v);

} // namespace polybound

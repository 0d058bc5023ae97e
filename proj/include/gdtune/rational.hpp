#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gdtune/errors.hpp"

namespace gdtune {

/// Exact arbitrary-precision rational. All exact paths in the engine use this
/// type; no floating point enters symbolic computations.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sgn(const Rational& x) { return ::sgn(x); }
inline int sgn(const Integer& x) { return ::sgn(x); }

/// Parse a strict "num/den" (or bare integer) string. Rejects decimals,
/// whitespace junk and zero denominators.
Rational rat_parse(const std::string& s);

/// Canonical "num/den" form, always with explicit denominator (e.g. "5/1").
std::string rat_str(const Rational& x);

double rat_to_double(const Rational& x);

/// num bits + den bits of the canonicalized value; the zero rational counts 1.
std::size_t rat_bits(const Rational& x);

Rational rat_pow(const Rational& base, unsigned e);

/// 2^-k as an exact rational.
Rational rat_pow2_neg(unsigned k);

Rational rat_abs(const Rational& x);

/// The unique rational with the smallest denominator (smallest numerator on
/// ties) in the closed interval [lo, hi]. Used to recognize exact rational
/// roots inside tight isolation brackets.
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

} // namespace gdtune

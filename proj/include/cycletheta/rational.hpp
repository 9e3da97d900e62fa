#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cycletheta {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms; den must be nonzero.
Rational make_rational(std::int64_t num, std::int64_t den);

/// Reduced "p/q" rendering; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses a decimal integer or a fraction "p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Fractional part in [0, 1).
Rational frac(const Rational& q);

Integer floor(const Rational& q);

/// Value of q as an int64; throws std::overflow_error if it is not an
/// integer or does not fit.
std::int64_t to_int64(const Rational& q);
std::int64_t to_int64(const Integer& z);

}  // namespace cycletheta

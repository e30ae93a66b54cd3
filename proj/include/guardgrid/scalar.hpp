#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gg {

/// Exact rational number. Always kept canonical (reduced, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

Scalar make_scalar(long num, long den = 1);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& s);

/// Exact power of a rational with an integer exponent (negative allowed for
/// non-zero base).
Scalar pow(const Scalar& base, int exponent);

Integer floor(const Scalar& s);
Integer ceil(const Scalar& s);

/// Smallest integer whose square is >= s (s >= 0).
Integer ceil_sqrt(const Scalar& s);

int sign(const Scalar& s);
Scalar abs(const Scalar& s);

/// Three-way comparison using a double pre-filter; exact fallback.
int compare(const Scalar& a, double a_approx, const Scalar& b, double b_approx);

}  // namespace gg

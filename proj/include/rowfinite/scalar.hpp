#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace rowfinite {

/// Exact rational scalar. gmpxx keeps every arithmetic result canonical
/// (lowest terms, positive denominator); values built by hand must go
/// through make_scalar or parse_scalar.
using Scalar = mpq_class;

/// Column / row index. Lengths use -1 for the zero row, so this is signed.
using Index = std::int64_t;

Scalar make_scalar(long numerator, long denominator = 1);

/// Parses "p/q" or "p" with an optional sign on p. Whitespace, '+' and
/// zero denominators are rejected. The result is canonical.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_text(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

/// 2^exponent as an exact rational; negative exponents give 1/2^-e.
Scalar power_of_two(Index exponent);

}  // namespace rowfinite

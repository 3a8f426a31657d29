#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace searchlight {

/// Exact rational coordinate type. All geometric predicates in the library
/// are evaluated over these; there is no floating point anywhere on a
/// decision path.
using Scalar = mpq_class;

/// Builds a canonical (lowest-terms, positive-denominator) rational.
inline Scalar ratio(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline int sgn(const Scalar& x) { return ::sgn(x); }

/// Parses "p/q" or a bare integer. Returns nullopt on malformed input.
std::optional<Scalar> parse_scalar(const std::string& text);

/// Serializes in lowest terms as "p/q", or "p" when the denominator is 1.
std::string format_scalar(const Scalar& x);

/// Decimal rendering with the given number of fractional digits (round to
/// nearest, ties away from zero). Used for report output only.
std::string format_decimal(const Scalar& x, int digits);

}  // namespace searchlight

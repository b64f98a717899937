#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hodge {

/// Exact rational number, always kept in canonical form (reduced, positive
/// denominator).
using Scalar = mpq_class;

/// Parses "p/q" or "p" (optional sign on p). Throws std::invalid_argument on
/// malformed input or zero denominator.
Scalar parse_scalar(std::string_view text);

/// Lowest-terms rendering: "p/q", or "p" when the denominator is 1.
std::string to_string(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace hodge

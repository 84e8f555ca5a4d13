#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tva {

/// Exact arbitrary-precision rational scalar. All arithmetic in the library
/// is over Q; there is no floating point anywhere.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
Rational rational_from_string(std::string_view text);

}  // namespace tva

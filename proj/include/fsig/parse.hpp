#pragma once

#include <string>

#include "fsig/poly.hpp"

namespace fsig {

/// Parse a polynomial expression over the given ambient.
///
/// Grammar (whitespace insensitive, no parentheses):
///   expr     = [sign] term { sign term }
///   sign     = "+" | "-"
///   term     = factor { "*" factor }
///   factor   = integer | variable [ "^" exponent ]
///   integer  = digit { digit }
///   exponent = digit { digit }
///
/// Returns the expanded canonical sparse form over the integers; reduction
/// mod p is a separate step. Throws std::invalid_argument on unknown
/// variables, malformed exponents, or empty input.
PolyZ parse_poly(const std::string& text, AmbientPtr ambient);

/// Canonical printer; the output re-parses to an identical term map.
std::string print_poly(const PolyZ& f);
std::string print_poly(const Poly& f);

} // namespace fsig

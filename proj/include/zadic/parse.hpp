#pragma once

#include <string_view>

#include "zadic/mpoly.hpp"
#include "zadic/ratfunc.hpp"

namespace zadic::arith {

// Textual polynomial syntax (see README, "Polynomial syntax"):
//
//   expr   := [sign] term { sign term }
//   term   := power { ('*' | '/') power | power }   juxtaposition multiplies
//   power  := atom [ '^' digits ]
//   atom   := digits | variable | '(' expr ')'
//   variable := 't' | 'X' | 'Y' | 'u' digits
//
// Errors are ParseError with a 1-based line and column.

// Division only by nonzero constants.
MPoly parse_mpoly(std::string_view text);
// Only the variable t; division by any nonzero polynomial.
RatFunc parse_ratfunc(std::string_view text);
// Polynomial in t only.
Poly parse_poly(std::string_view text);

} // namespace zadic::arith

#pragma once

#include <string_view>

#include "pscale/cpoly.hpp"

namespace pscale {

/// Parses an expression over z1..zn, zb1..zbn.
///
/// Grammar (whitespace insignificant):
///   expr   := ["+"|"-"] term (("+"|"-") term)*
///   term   := factor ("*" factor)*
///   factor := base ("^" uint)?
///   base   := var | "i" | number | "(" expr ")" | "Re(" expr ")" | "Im(" expr ")"
///           | "abs2(" expr ")" | "conj(" expr ")"
///   var    := "z" uint | "zb" uint
///   number := decimal (optionally with an e-exponent) or "p/q"
///
/// Throws ParseError (with the byte offset) on malformed input, on a variable index
/// above nvars, and on negative exponents.
Poly parse_poly(std::string_view text, int nvars, int degree_cap = kDefaultDegreeCap);

/// parse_poly followed by the Hermitian-symmetry check.
RealPoly parse_real_poly(std::string_view text, int nvars);

/// A constant expression, e.g. "1/5 - 2/3*i".
Gaussian parse_scalar(std::string_view text);

/// A single number literal: "12", "-0.125", "3/4", "1e-8". Exact.
Rational parse_rational(std::string_view text);

}  // namespace pscale

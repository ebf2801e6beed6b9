#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sosforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Renders `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& r);

/// Parses `p`, `-p`, `p/q`. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Lagrange decomposition n = a^2 + b^2 + c^2 + d^2 for n >= 0.
/// Deterministic for a given n.
std::array<Integer, 4> four_squares(const Integer& n);

/// Nonzero rationals a_i (at most four) with sum a_i^2 == r, for r >= 0.
/// Lets a nonnegative weight on a square be folded into plain generators.
std::vector<Rational> rational_square_split(const Rational& r);

/// Best rational approximation of x with denominator at most max_den.
Rational approximate(double x, long max_den);

}  // namespace sosforge

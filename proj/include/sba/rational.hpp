#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace sba {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" in lowest terms; integers print without a denominator.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and "-p/q".
Rational parse_rational(const std::string& text);

Integer lcm_of_denominators(std::span<const Rational> values);

}  // namespace sba

#pragma once

#include "sba/scaling.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sba {

/// Powerset algebra on atoms "a", "b", ... (n ≤ 16).
Algebra letter_algebra(int n);

/// P({a,b,c}): {a},{b} → alpha, {a,b} → beta, {c} → gamma, {a,c},{b,c} → delta,
/// with beta and gamma incomparable.
Scaling middlescale();

/// middlescale with beta < gamma added.
Scaling linear_middlescale();

/// P({a,b,c}) with {c} and {a,b} in one class between the incomparable pairs
/// {a},{b} and {a,c},{b,c}.
Scaling quasicomplement();

/// One-to-one on P({a,b,c}), ordered by cardinality only.
Scaling balanced();

/// Least scaling on P({a,b,c}) with {a} < {b}, {a} < {c}, {b} < {a,c}.
Scaling poset6();

/// P({a,b}) with {a} < {b}.
Scaling two_point();

/// Scaling of the uniform measure on n atoms.
Scaling uniform_scaling(int n);

std::vector<std::string> builtin_names();
std::optional<Scaling> builtin(std::string_view name);

}  // namespace sba

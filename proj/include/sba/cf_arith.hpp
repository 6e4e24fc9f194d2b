#pragma once

#include "sba/rational.hpp"
#include "sba/scale.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sba {

struct ContinuedFraction {
    std::vector<std::int64_t> entries;

    /// Exact value via convergents.
    Rational value() const;
    /// "[2]", "[0; 3]", "[0; 1, 2]".
    std::string to_string() const;

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Formal expansion of num/den by repeated subtraction in the scale.
/// Throws not_linear, not_divided or zero_denominator.
ContinuedFraction continued_fraction(const Scale& s, ClassId num, ClassId den);

struct CanonicalMeasure {
    std::vector<Rational> value;  // per class
};

/// The unique measure with value 1 at the top. Throws not_linear / not_divided.
CanonicalMeasure canonical_measure(const Scale& s);

/// mu^-1(mu(a) mu(b)), or nullopt when the product is not a value of mu.
std::optional<ClassId> scale_multiply(const Scale& s, ClassId a, ClassId b);

/// Canonical measure of the restriction to [0,z], evaluated at x ∧ z.
/// Throws condition_on_zero.
Rational conditional_probability(const Scaling& s, Mask x, Mask z);

struct ProductRuleReport {
    bool ok = false;
    Rational joint;        // P(x ∧ z)
    Rational conditional;  // P(x | z)
    Rational marginal;     // P(z)
    ContinuedFraction joint_over_marginal;
    ContinuedFraction conditional_over_one;
    std::string failure;
};

ProductRuleReport verify_product_rule(const Scaling& s, Mask x, Mask z);

/// The measure's atoms split into equal units: atom i of mass p_i/q becomes
/// p_i atoms of the uniform scaling on q units.
struct UnitRefinement {
    Scaling scaling;
    std::vector<Mask> atom_units;

    Mask embed(Mask x) const;
};

/// Throws nonpositive_mass, invalid_argument (total not 1) or
/// unsupported_size (more than 16 units).
UnitRefinement unit_refinement(const Algebra& alg, std::span<const Rational> measure);

}  // namespace sba

#pragma once

#include "sba/algebra.hpp"
#include "sba/poset.hpp"
#include "sba/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sba {

using ClassId = int;

/// A basic scaling on a finite powerset algebra: the class of every element
/// together with a strict order on the classes.
///
/// Classes are numbered along a topological linearization of the order
/// (ties broken by the smallest member mask), so class 0 holds the zero
/// element and class k-1 holds the unit.
class Scaling {
public:
    /// Canonicalizes class numbering; performs no axiom check. `class_of` is
    /// indexed by mask, `names` (optional) by the caller's class ids.
    static Scaling assemble(Algebra alg, std::vector<ClassId> class_of, Poset order,
                            std::vector<std::string> names = {});

    const Algebra& algebra() const { return impl_->algebra; }
    int class_count() const { return impl_->order.size(); }
    ClassId class_of(Mask x) const { return impl_->class_of[x]; }
    ClassId class_of(const Element& x) const;
    std::span<const ClassId> classes() const { return impl_->class_of; }
    const Poset& order() const { return impl_->order; }

    bool lt(ClassId a, ClassId b) const { return impl_->order.lt(a, b); }
    bool le(ClassId a, ClassId b) const { return impl_->order.le(a, b); }

    std::span<const Mask> members(ClassId c) const { return impl_->members[c]; }
    Mask representative(ClassId c) const { return impl_->members[c].front(); }

    const std::string& name(ClassId c) const { return impl_->names[c]; }
    std::span<const std::string> names() const { return impl_->names; }
    std::optional<ClassId> find_class(std::string_view name) const;

    ClassId zero_class() const { return class_of(Mask{0}); }
    ClassId one_class() const { return class_of(algebra().full_mask()); }

    bool one_to_one() const { return class_count() == static_cast<int>(algebra().size()); }
    bool linear() const { return impl_->order.is_linear(); }

private:
    struct Impl {
        Algebra algebra;
        std::vector<ClassId> class_of;
        Poset order;
        std::vector<std::vector<Mask>> members;
        std::vector<std::string> names;
    };
    explicit Scaling(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Default class names: "0", then greek letters in class order, then "1".
std::vector<std::string> default_class_names(int class_count);

struct Violation {
    enum class Kind {
        not_increasing,  // x < y but not rho(x) < rho(y)
        reversal,        // rho(x) < rho(y) but not rho(~y[a,b]) < rho(~x[a,b])
        equality,        // rho(x) = rho(y) but rho(~x[a,b]) != rho(~y[a,b])
    };
    Kind kind;
    Mask x = 0;
    Mask y = 0;
    Mask a = 0;
    Mask b = 0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct AxiomReport {
    std::uint64_t violation_count = 0;
    std::vector<Violation> witnesses;  // the first few, in a fixed scan order

    bool ok() const { return violation_count == 0; }
};

std::string describe(const Scaling& s, const Violation& v);

/// Checks strict increase over all x < y and relative-complement
/// preservation (both clauses) over every interval [a,b].
AxiomReport verify_axioms(const Scaling& s, std::size_t max_witnesses = 16);

/// Single-threaded reference for verify_axioms; identical report.
AxiomReport verify_axioms_serial(const Scaling& s, std::size_t max_witnesses = 16);

/// Closes the order transitively, canonicalizes and verifies. Throws
/// cycle_in_order, axiom_a_violation or axiom_b_violation.
Scaling build_scaling(const Algebra& alg, std::span<const ClassId> class_assignment,
                      std::span<const std::pair<ClassId, ClassId>> strict_order,
                      std::vector<std::string> names = {});

/// The identity scaling: every element is its own class, ordered by inclusion.
Scaling identity_scaling(const Algebra& alg);

/// Scaling induced by the convex hull of the given measures (one mass per
/// atom, all positive). Throws empty_measure_list / nonpositive_mass.
Scaling scaling_from_measures(const Algebra& alg, std::span<const std::vector<Rational>> measures);

/// Least one-to-one scaling whose order contains inclusion and the given
/// pairs, closed under transitivity, disjoint addition and interval
/// complement reversal. Throws closure_collapse if the closure is cyclic.
Scaling closure_scaling(const Algebra& alg, std::span<const std::pair<Mask, Mask>> generators);

/// Restriction of s to the relative algebra [0,z], re-based on the atoms of z.
struct Restriction {
    Scaling scaling;
    Mask top = 0;  // z in the parent algebra

    /// Parent mask (a subset of z) to the restricted algebra's mask.
    Mask compress(Mask x) const;
    Mask expand(Mask x) const;
};

Restriction restrict_to(const Scaling& s, Mask z);

}  // namespace sba

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sba {

/// Subset of the atom set, bit i standing for atom i.
using Mask = std::uint32_t;

inline bool is_submask(Mask x, Mask y) { return (x & ~y) == 0; }
inline int popcount(Mask x) { return __builtin_popcount(x); }

/// Complement of x relative to [a,b]: a ∨ (b ∧ ∼x).
inline Mask relative_complement_mask(Mask x, Mask a, Mask b) { return a | (b & ~x); }

/// An element of a finite powerset algebra. Carries the identity of its
/// algebra so that operands from different algebras are rejected.
struct Element {
    Mask bits = 0;
    Mask full = 0;
    std::uint64_t algebra = 0;

    friend bool operator==(const Element&, const Element&) = default;
};

class Algebra {
public:
    static constexpr int max_atoms = 16;

    /// Powerset of the given atoms; throws duplicate_label / size_out_of_range.
    static Algebra powerset(std::vector<std::string> labels);

    int atom_count() const { return static_cast<int>(impl_->labels.size()); }
    std::size_t size() const { return std::size_t{1} << atom_count(); }
    Mask full_mask() const { return static_cast<Mask>(size() - 1); }
    const std::vector<std::string>& labels() const { return impl_->labels; }
    std::uint64_t id() const { return impl_->id; }

    Element zero() const { return element(0); }
    Element one() const { return element(full_mask()); }
    Element atom(int i) const;
    Element element(Mask bits) const;
    std::vector<Element> atoms() const;
    bool owns(const Element& x) const { return x.algebra == id(); }

    /// Index of an atom label, or -1.
    int atom_index(std::string_view label) const;

    /// Parses "{a,b}", "a,b", "{}" or "0"/"1".
    Element parse(std::string_view text) const;
    Element from_labels(std::span<const std::string> labels) const;

    std::string format(Mask bits) const;
    std::string format(const Element& x) const { return format(x.bits); }
    std::vector<std::string> labels_of(Mask bits) const;

    friend bool operator==(const Algebra& a, const Algebra& b) { return a.id() == b.id(); }

private:
    struct Impl {
        std::vector<std::string> labels;
        std::uint64_t id;
    };
    explicit Algebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

Element meet(const Element& x, const Element& y);
Element join(const Element& x, const Element& y);
Element complement(const Element& x);
bool leq(const Element& x, const Element& y);
bool lt(const Element& x, const Element& y);

struct LatticeOps {
    Element meet;
    Element join;
    Element complement;  // of the first operand
    bool leq;
    bool lt;
};

LatticeOps lattice_ops(const Element& x, const Element& y);

/// ∼x relative to [a,b]; throws outside_interval unless a ≤ x ≤ b.
Element relative_complement(const Element& x, const Element& a, const Element& b);

enum class HomKind { principal, nonprincipal };

/// A two-valued homomorphism onto {0,1}. Finite algebras only have the
/// principal ones, h(y) = 1 iff atom ≤ y.
struct TwoValuedHom {
    HomKind kind = HomKind::principal;
    Element atom;

    bool operator()(const Element& y) const;
};

std::vector<TwoValuedHom> two_valued_homomorphisms(const Algebra& alg);

}  // namespace sba

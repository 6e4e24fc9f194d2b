#pragma once

#include "sba/algebra.hpp"
#include "sba/rational.hpp"
#include "sba/scaling.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sba {

/// Reflexive transitive relation on points 0..size-1 (not necessarily total).
class Preorder {
public:
    Preorder() = default;
    explicit Preorder(int size);

    /// Total preorder with i ≤ j iff rank[i] ≤ rank[j].
    static Preorder from_ranks(std::span<const int> rank);

    int size() const { return size_; }
    bool le(int i, int j) const { return rel_[static_cast<std::size_t>(i) * size_ + j] != 0; }
    bool lt(int i, int j) const { return le(i, j) && !le(j, i); }
    bool equivalent(int i, int j) const { return le(i, j) && le(j, i); }
    void set_le(int i, int j) { rel_[static_cast<std::size_t>(i) * size_ + j] = 1; }
    bool total() const;
    bool transitive() const;

    friend bool operator==(const Preorder&, const Preorder&) = default;

private:
    int size_ = 0;
    std::vector<char> rel_;
};

/// P(x|z) for every conditioning element z > 0, each a preorder over the
/// whole algebra; given[full] is the unconditional ordering.
struct BeliefSystem {
    Algebra algebra;
    std::vector<std::optional<Preorder>> given;  // indexed by z, empty at z = 0

    const Preorder& unconditional() const { return *given[algebra.full_mask()]; }
};

/// P(x|z) ≤ P(y|z) iff P(x∧z) ≤ P(y∧z).
BeliefSystem canonical_belief_system(const Algebra& alg, const Preorder& unconditional);

/// Preorder of a measure's values (masses per atom).
Preorder preorder_from_measure(const Algebra& alg, std::span<const Rational> mass);

enum class Axiom { increasing, complement, sure_thing, sure_thing_strict, totality, coherence };

inline constexpr std::array<Axiom, 6> all_axioms = {Axiom::increasing, Axiom::complement, Axiom::sure_thing,
                                                    Axiom::sure_thing_strict, Axiom::totality, Axiom::coherence};

std::string to_string(Axiom a);

class AxiomSet {
public:
    static AxiomSet all() { return AxiomSet(0x3F); }
    AxiomSet without(Axiom a) const { return AxiomSet(bits_ & ~bit(a)); }
    bool has(Axiom a) const { return (bits_ & bit(a)) != 0; }

    friend bool operator==(const AxiomSet&, const AxiomSet&) = default;

private:
    explicit AxiomSet(unsigned bits) : bits_(bits) {}
    static unsigned bit(Axiom a) { return 1u << static_cast<unsigned>(a); }
    unsigned bits_;
};

struct AxiomFinding {
    Axiom axiom;
    Mask x = 0;
    Mask y = 0;
    Mask z = 0;
};

struct BeliefReport {
    std::array<std::uint64_t, 6> counts{};
    std::vector<AxiomFinding> findings;

    std::uint64_t count(Axiom a) const { return counts[static_cast<std::size_t>(a)]; }
    bool ok() const;
};

/// Checks (per conditioning z) strict increase, complement reversal,
/// totality and coherence, and the sure-thing rule over every 0 < z < 1.
BeliefReport check_axioms(const BeliefSystem& bs, AxiomSet enabled = AxiomSet::all(), std::size_t max_findings = 16);

std::string describe(const BeliefSystem& bs, const AxiomFinding& f);

struct DerivationCounterexample {
    Preorder unconditional;
    Violation violation;
    std::string text;
};

struct DerivationResult {
    int n = 0;
    std::uint64_t systems = 0;  // unconditional orderings enumerated
    std::uint64_t passing = 0;  // those satisfying every enabled axiom
    std::optional<DerivationCounterexample> counterexample;
};

/// Enumerates the canonical family over every total preorder of P(n) (every
/// preorder when totality is disabled) and looks for a system meeting the
/// enabled axioms whose unconditional ordering is not a basic scaling.
/// n ≤ 3, or n ≤ 2 without totality; throws unsupported_size otherwise.
DerivationResult derivation_counterexample_search(int n, AxiomSet enabled = AxiomSet::all(), bool parallel = true);

/// Scaling given by the equivalence classes and strict part of a preorder on
/// the elements of alg.
Scaling scaling_of_preorder(const Algebra& alg, const Preorder& p);

}  // namespace sba

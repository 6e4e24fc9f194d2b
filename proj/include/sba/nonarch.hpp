#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sba {

/// Ultimately periodic subset of {0,1,2,...}: explicit membership below a
/// threshold, a residue pattern from there on. Always in normal form
/// (minimal period, minimal threshold), so == is set equality.
class UPSet {
public:
    static UPSet empty();
    static UPSet naturals();
    static UPSet evens();
    static UPSet odds();
    /// {n : n ≡ r mod p}.
    static UPSet residue(std::uint64_t r, std::uint64_t p);
    static UPSet finite(std::span<const std::uint64_t> members);
    /// {n, n+1, ...}.
    static UPSet tail(std::uint64_t n);
    /// Normalizes the given description.
    static UPSet make(std::vector<bool> residues, std::vector<bool> prefix);

    bool contains(std::uint64_t n) const;
    std::uint64_t period() const { return residues_.size(); }
    std::uint64_t threshold() const { return prefix_.size(); }
    const std::vector<bool>& residues() const { return residues_; }

    bool is_finite() const;
    /// Only meaningful for finite sets.
    std::uint64_t size() const;
    /// Smallest k members (fewer if the set is finite and smaller).
    std::vector<std::uint64_t> first(std::size_t k) const;
    /// Purely periodic part: the residues without exceptions.
    UPSet core() const;

    UPSet unite(const UPSet& o) const;
    UPSet intersect(const UPSet& o) const;
    UPSet minus(const UPSet& o) const;
    UPSet complement() const;
    bool subset_of(const UPSet& o) const { return minus(o) == empty(); }

    std::string to_string() const;

    friend bool operator==(const UPSet&, const UPSet&) = default;

private:
    UPSet(std::vector<bool> residues, std::vector<bool> prefix);
    template <class Op>
    UPSet combine(const UPSet& o, Op op) const;

    std::vector<bool> residues_;
    std::vector<bool> prefix_;
};

/// |A∖B| as a count, or nullopt for aleph-null.
std::optional<std::uint64_t> difference_cardinality(const UPSet& a, const UPSet& b);

struct UPSetOps {
    UPSet unite, intersect, complement, difference;
    std::optional<std::uint64_t> difference_cardinality;
};

UPSetOps upset_ops(const UPSet& a, const UPSet& b);

/// Parses expressions such as "evens | {1,3}", "~tail(4)", "4n+1 & odds",
/// "N - {0}" and the to_string form "(1,3 mod 4) + {0}". Operators by
/// binding: ~, &, then + and - (left to right), then |.
UPSet parse_upset(std::string_view text);

/// Equivalence class under finite exchange: the periodic core and the net
/// number of points added to it.
struct GalaxyValue {
    UPSet core = UPSet::empty();
    std::int64_t offset = 0;

    std::string to_string() const;
    friend bool operator==(const GalaxyValue&, const GalaxyValue&) = default;
};

GalaxyValue value_of(const UPSet& a);

/// A set with the given value; throws invalid_argument if none exists
/// (negative offset on the empty core, positive on the full one).
UPSet representative(const GalaxyValue& v);

enum class Order { lt, eq, gt, incomparable };

std::string to_string(Order o);

/// Straight from the cardinalities of A∖B and B∖A.
Order nonarch_compare(const UPSet& a, const UPSet& b);
Order compare(const GalaxyValue& a, const GalaxyValue& b);

std::optional<GalaxyValue> predecessor(const GalaxyValue& v);
std::optional<GalaxyValue> successor(const GalaxyValue& v);

/// k-th member (k ≥ 1) of the disjoint family evens, 1 mod 4, 3 mod 8, ...
UPSet disjoint_family_member(int k);

struct InfinitesimalReport {
    bool infinitesimal = false;
    std::vector<UPSet> witness;  // leading members of an infinite disjoint family above v
    std::string argument;
};

InfinitesimalReport is_infinitesimal(const GalaxyValue& v, int witness_members = 8);

/// B1 ⊂ B with value equal to that of A. Throws invalid_argument unless A < B.
UPSet divided_witness(const UPSet& a, const UPSet& b);

struct DiscontinuityReport {
    GalaxyValue lower_bound;             // value of ∅ plus 5
    std::vector<std::uint64_t> sampled;  // n of the sampled tails
    bool bound_holds = false;            // lower bound ≤ every sampled tail
    bool bound_above_meet = false;       // value of ∅ < lower bound
    UPSet meet = UPSet::empty();         // meet of the whole chain
    bool meet_value_is_empty = false;
    std::uint64_t partial_sums = 0;      // singleton partial sums checked
    bool partial_sums_finite = false;    // each stays in the finite galaxy, below value of N minus 1
    std::string text;

    bool ok() const { return bound_holds && bound_above_meet && meet_value_is_empty && partial_sums_finite; }
};

DiscontinuityReport discontinuity_witness(std::span<const std::uint64_t> sample = {}, std::uint64_t partial_sums = 64);

/// Sets a ≤ x ≤ b such that shifting the galaxy of x by +1 (and nothing
/// else) keeps the order but not relative complements.
struct GalaxyShiftWitness {
    UPSet a, b, x;
    GalaxyValue shifted_complement;  // image of the complement's value
    GalaxyValue complement_of_shift; // complement of the shifted value
    bool breaks = false;
};

GalaxyShiftWitness galaxy_shift_witness();

}  // namespace sba

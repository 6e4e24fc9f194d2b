#pragma once

#include "sba/rational.hpp"
#include "sba/scaling.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sba {

/// A pair (x, y) with rho(x) < rho(y) but no proper y1 < y in the class of x.
struct DividedCounterexample {
    Mask x = 0;
    Mask y = 0;
};

/// nullopt when s is divided.
std::optional<DividedCounterexample> is_divided(const Scaling& s);

struct TupleRep {
    std::vector<std::vector<int>> partition;  // atom indices per block
    std::vector<int> block_of_atom;

    std::vector<int> rep(Mask x) const;
};

/// Throws not_divided, or order_mismatch if the count tuples disagree with s.
TupleRep kleene_tuple_representation(const Scaling& s);

struct Comparison {
    Mask lesser = 0;
    Mask greater = 0;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// m(lesser) < m(greater) for each strict pair, m(lesser) = m(greater) for
/// each equal pair; positivity of every atom and total mass 1 are implicit.
struct ConstraintSystem {
    int variables = 0;
    std::vector<Comparison> strict;
    std::vector<Comparison> equal;
};

ConstraintSystem build_constraints(const Scaling& s);

struct Measure {
    std::vector<Rational> mass;  // per atom

    Rational value(Mask x) const;
};

/// True iff m is positive, sums to 1 and meets every row exactly.
bool satisfies(const ConstraintSystem& c, const Measure& m);

/// Nonnegative multipliers on strict rows and positivity, free ones on
/// equalities, whose combination is the zero form although its value on any
/// agreeing measure would be positive.
struct Certificate {
    std::vector<std::pair<std::size_t, Integer>> strict;      // row index into ConstraintSystem::strict
    std::vector<std::pair<int, Integer>> positivity;          // atom index
    std::vector<std::pair<std::size_t, Integer>> equal;       // row index into ConstraintSystem::equal

    bool verify(const ConstraintSystem& c) const;
};

struct MeasureResult {
    std::optional<Measure> measure;
    std::optional<Certificate> certificate;
    Rational slack;  // optimal margin of the strict rows

    bool measurable() const { return measure.has_value(); }
};

MeasureResult find_agreeing_measure(const ConstraintSystem& c);
MeasureResult find_agreeing_measure(const Scaling& s);

/// Corners of the closed relaxation, one per row, sorted lexicographically
/// descending, with the least common denominator of each row.
struct PolytopeVertices {
    std::vector<std::vector<Rational>> rows;
    std::vector<Integer> denominators;
};

/// Throws empty_polytope.
PolytopeVertices enumerate_polytope_vertices(const ConstraintSystem& c);

struct Division {
    PolytopeVertices vertices;
    std::vector<std::vector<int>> sigma;  // per original atom, count per class
    std::vector<int> class_sizes;
    std::vector<std::string> expanded_labels;
    std::vector<int> copy_class;     // tag of each expanded atom
    std::vector<Mask> atom_copies;   // per original atom, its copies in the expanded algebra
    std::optional<Scaling> expanded; // materialized when the expanded algebra has at most 16 atoms

    Mask embed(Mask x) const;
    std::vector<int> tuple(Mask x) const;
};

struct DivisionResult {
    std::optional<Division> division;
    std::optional<Certificate> certificate;  // set when indivisible

    bool divisible() const { return division.has_value(); }
};

/// Throws embedding_not_faithful if the tuple order fails to preserve and
/// reflect the order of s.
DivisionResult construct_division(const Scaling& s);

/// The five-atom one-to-one scaling that is neither measurable nor divisible.
Scaling kps_example();

/// The four defining strict pairs of kps_example().
std::vector<std::pair<Mask, Mask>> kps_generators();

}  // namespace sba

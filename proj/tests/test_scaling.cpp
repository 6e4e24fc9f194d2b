#include "sba/belief.hpp"
#include "sba/catalog.hpp"
#include "sba/divisibility.hpp"
#include "sba/error.hpp"
#include "sba/scale.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace sba;

namespace {

// The published addition table, rows and columns in the order 0 α β γ δ 1.
const std::vector<std::string> middle_names = {"0", "alpha", "beta", "gamma", "delta", "1"};
const std::vector<std::vector<std::string>> published_add = {
    {"0", "alpha", "beta", "gamma", "delta", "1"},
    {"alpha", "beta", "?", "delta", "1", "X"},
    {"beta", "?", "X", "1", "X", "X"},
    {"gamma", "delta", "1", "X", "X", "X"},
    {"delta", "1", "X", "X", "X", "X"},
    {"1", "X", "X", "X", "X", "X"},
};

std::string cell_text(const Scale& s, const Partial& p)
{
    if (p)
        return s.name(*p);
    return p.reason() == Undefined::boxtimes ? "X" : "?";
}

bool reproduces_published(const Scale& s)
{
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const ClassId a = *s.scaling().find_class(middle_names[i]);
            const ClassId b = *s.scaling().find_class(middle_names[j]);
            if (cell_text(s, s.add(a, b)) != published_add[i][j])
                return false;
        }
    return true;
}

// ∅ → 0, {a},{b} → α, {a,b} → β, {c} → γ, {a,c},{b,c} → δ, 1 → 1, in caller ids 0..5
std::vector<ClassId> middle_assignment() { return {0, 1, 1, 2, 3, 4, 4, 5}; }

}  // namespace

TEST(Scaling, MiddlescaleOrderIsTheUniqueOneReproducingTheTable)
{
    const Algebra alg = letter_algebra(3);
    int matches = 0;
    Poset found;
    // every strict order on α..δ (caller ids 1..4), 0 below and 1 above all
    for (unsigned rel = 0; rel < (1u << 12); ++rel) {
        Poset p(6);
        for (int i = 1; i <= 4; ++i) {
            p.set(0, i);
            p.set(i, 5);
        }
        p.set(0, 5);
        int bit = 0;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (i != j && (rel >> bit++ & 1u))
                    p.set(i, j);
        Poset closed = p;
        closed.close();
        if (closed != p || !p.is_strict_order())
            continue;
        const Scaling s = Scaling::assemble(alg, middle_assignment(), p, middle_names);
        if (!verify_axioms(s).ok())
            continue;
        try {
            if (reproduces_published(Scale(s))) {
                ++matches;
                found = s.order();
            }
        } catch (const Error&) {
        }
    }
    EXPECT_EQ(matches, 1);
    EXPECT_EQ(found, middlescale().order());
}

TEST(Scaling, MiddlescaleIsValid)
{
    const Scaling s = middlescale();
    EXPECT_TRUE(verify_axioms(s).ok());
    EXPECT_EQ(s.class_count(), 6);
    EXPECT_FALSE(s.linear());
    EXPECT_EQ(s.name(s.class_of(Mask{0b001})), "alpha");
    EXPECT_EQ(s.name(s.class_of(Mask{0b100})), "gamma");
}

TEST(Scaling, MissingAlphaBelowGammaBreaksComplementReversal)
{
    const Algebra alg = letter_algebra(3);
    const std::vector<std::pair<ClassId, ClassId>> order = {{0, 1}, {0, 3}, {1, 2}, {2, 4}, {3, 4}, {4, 5}};
    try {
        build_scaling(alg, middle_assignment(), order, middle_names);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::axiom_b_violation);
    }
}

TEST(Scaling, CycleRejected)
{
    const Algebra alg = letter_algebra(1);
    const std::vector<ClassId> cls = {0, 1};
    const std::vector<std::pair<ClassId, ClassId>> order = {{0, 1}, {1, 0}};
    try {
        build_scaling(alg, cls, order);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::cycle_in_order);
    }
}

TEST(Scaling, NotIncreasingRejected)
{
    const Algebra alg = letter_algebra(2);
    const std::vector<ClassId> cls = {0, 1, 1, 1};  // {a} and {a,b} share a class
    const std::vector<std::pair<ClassId, ClassId>> order = {{0, 1}};
    try {
        build_scaling(alg, cls, order);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::axiom_a_violation);
    }
}

TEST(Scaling, ComplementsOrderedTheSameWayRejected)
{
    const Algebra alg = letter_algebra(3);
    std::vector<ClassId> cls(8);
    std::vector<std::pair<ClassId, ClassId>> order;
    for (Mask x = 0; x < 8; ++x) {
        cls[x] = static_cast<ClassId>(x);
        for (Mask y = 0; y < 8; ++y)
            if (x != y && is_submask(x, y))
                order.emplace_back(x, y);
    }
    order.emplace_back(0b001, 0b010);  // {a} < {b}
    order.emplace_back(0b110, 0b101);  // {b,c} < {a,c}
    try {
        build_scaling(alg, cls, order);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::axiom_b_violation);
    }
    const Scaling raw = Scaling::assemble(alg, cls, [&] {
        Poset p(8);
        for (auto [a, b] : order)
            p.set(a, b);
        p.close();
        return p;
    }());
    const AxiomReport r = verify_axioms(raw);
    ASSERT_FALSE(r.ok());
    EXPECT_FALSE(describe(raw, r.witnesses.front()).empty());
}

TEST(Scaling, IdentityAndTwoPoint)
{
    for (int n = 1; n <= 5; ++n)
        EXPECT_TRUE(verify_axioms(identity_scaling(letter_algebra(n))).ok());
    EXPECT_TRUE(verify_axioms(two_point()).ok());
}

TEST(Scaling, FromMeasures)
{
    const Algebra alg = letter_algebra(3);
    const std::vector<std::vector<Rational>> uniform = {{check::q(1, 3), check::q(1, 3), check::q(1, 3)}};
    const Scaling u = scaling_from_measures(alg, uniform);
    EXPECT_EQ(u.class_count(), 4);
    EXPECT_TRUE(u.linear());

    const std::vector<std::vector<Rational>> two = {{check::q(2, 6), check::q(1, 6), check::q(3, 6)},
                                                    {check::q(1, 6), check::q(2, 6), check::q(3, 6)}};
    const Scaling s = scaling_from_measures(alg, two);
    EXPECT_TRUE(verify_axioms(s).ok());
    const ClassId a = s.class_of(Mask{1}), b = s.class_of(Mask{2}), c = s.class_of(Mask{4});
    EXPECT_FALSE(s.le(a, b) || s.le(b, a));
    EXPECT_TRUE(s.lt(a, c) && s.lt(b, c));
    // direct pairwise comparison over both measures
    for (Mask x = 0; x < 8; ++x)
        for (Mask y = 0; y < 8; ++y) {
            const Rational x0 = check::mass_of(two[0], x), y0 = check::mass_of(two[0], y);
            const Rational x1 = check::mass_of(two[1], x), y1 = check::mass_of(two[1], y);
            const bool expect_lt = x0 <= y0 && x1 <= y1 && (x0 < y0 || x1 < y1);
            EXPECT_EQ(s.lt(s.class_of(x), s.class_of(y)), expect_lt);
            EXPECT_EQ(s.class_of(x) == s.class_of(y), x0 == y0 && x1 == y1);
        }
}

TEST(Scaling, FromMeasuresErrors)
{
    const Algebra alg = letter_algebra(2);
    try {
        scaling_from_measures(alg, std::vector<std::vector<Rational>>{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::empty_measure_list);
    }
    const std::vector<std::vector<Rational>> zero = {{Rational(0), Rational(1)}};
    try {
        scaling_from_measures(alg, zero);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::nonpositive_mass);
    }
}

TEST(Scaling, KpsClosureHasTheGeneratorsAndForcesBBelowA)
{
    const Scaling s = kps_example();
    EXPECT_TRUE(s.one_to_one());
    EXPECT_TRUE(verify_axioms(s).ok());
    for (auto [lo, hi] : kps_generators())
        EXPECT_TRUE(s.lt(s.class_of(lo), s.class_of(hi)));
    const ClassId a = s.class_of(Mask{0b00001}), b = s.class_of(Mask{0b00010});
    EXPECT_TRUE(s.lt(b, a));
}

TEST(Scaling, KpsClosureMatchesGenericClosure)
{
    const Scaling s = kps_example();
    const Algebra alg = letter_algebra(5);
    const auto gens = kps_generators();
    const Scaling replay = closure_scaling(alg, gens);
    for (Mask x = 0; x <= alg.full_mask(); ++x)
        for (Mask y = 0; y <= alg.full_mask(); ++y)
            EXPECT_EQ(s.lt(s.class_of(x), s.class_of(y)), replay.lt(replay.class_of(x), replay.class_of(y)));
}

TEST(Scaling, ClosureCollapse)
{
    const Algebra alg = letter_algebra(2);
    const std::vector<std::pair<Mask, Mask>> gens = {{0b01, 0b10}, {0b10, 0b01}};
    try {
        closure_scaling(alg, gens);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::closure_collapse);
    }
}

TEST(Scaling, Restriction)
{
    const Scaling s = middlescale();
    const Restriction r = restrict_to(s, 0b011);
    EXPECT_EQ(r.scaling.algebra().atom_count(), 2);
    EXPECT_EQ(r.scaling.class_count(), 3);  // ∅, {a}~{b}, {a,b}
    EXPECT_EQ(r.expand(r.compress(0b010)), Mask{0b010});
    EXPECT_TRUE(verify_axioms(r.scaling).ok());
    EXPECT_THROW(restrict_to(s, 0), Error);
}

TEST(ScaleMap, IdentityExtensionAndCollapse)
{
    const Scale mid(middlescale());
    const Scale lin(linear_middlescale());
    std::vector<ClassId> id(mid.size()), ext(mid.size()), collapse(mid.size());
    for (ClassId c = 0; c < mid.size(); ++c) {
        id[c] = c;
        ext[c] = lin.scaling().class_of(mid.scaling().representative(c));
        collapse[c] = c;
    }
    EXPECT_TRUE(verify_scale_map(mid, mid, id).ok());
    EXPECT_TRUE(verify_scale_map(mid, lin, ext).ok());
    const ClassId alpha = *mid.scaling().find_class("alpha"), beta = *mid.scaling().find_class("beta");
    collapse[beta] = alpha;
    EXPECT_FALSE(verify_scale_map(mid, mid, collapse).ok());
}

TEST(ScalingProperty, ParallelCheckMatchesSerial)
{
    check::Gen g(21);
    std::vector<Scaling> cases = check::census_pool();
    for (int trial = 0; trial < 150; ++trial) {
        const int n = g.uniform(2, 4);
        const Algebra alg = letter_algebra(n);
        std::vector<int> rank(alg.size());
        for (auto& r : rank)
            r = g.uniform(0, 6);
        rank[0] = -1;
        rank[alg.full_mask()] = 7;
        cases.push_back(scaling_of_preorder(alg, Preorder::from_ranks(rank)));
    }
    for (const auto& s : cases) {
        const AxiomReport par = verify_axioms(s, 8);
        const AxiomReport ser = verify_axioms_serial(s, 8);
        EXPECT_EQ(par.violation_count, ser.violation_count);
        EXPECT_EQ(par.witnesses, ser.witnesses);
    }
}

TEST(ScalingProperty, MeasuresAndMixturesAreScalings)
{
    check::Gen g(22);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = g.uniform(1, 4);
        const Algebra alg = letter_algebra(n);
        std::vector<std::vector<Rational>> ms;
        for (int k = g.uniform(1, 3); k > 0; --k)
            ms.push_back(g.measure(n));
        const Scaling s = scaling_from_measures(alg, ms);
        EXPECT_TRUE(verify_axioms(s).ok());
        EXPECT_EQ(s.class_of(Mask{0}), s.zero_class());
        EXPECT_EQ(s.members(s.zero_class()).size(), 1u);
        EXPECT_EQ(s.members(s.one_class()).size(), 1u);
    }
}

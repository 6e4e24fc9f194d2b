#include "sba/error.hpp"
#include "sba/nonarch.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace sba;

namespace {

/// A window past every threshold that covers whole periods of both sets.
std::uint64_t window(const UPSet& a, const UPSet& b)
{
    return std::max(a.threshold(), b.threshold()) + 2 * std::lcm(a.period(), b.period());
}

/// Brute-force |A \ B| over the window: finite iff nothing in the last
/// lcm-block is missing.
std::optional<std::uint64_t> brute_difference(const UPSet& a, const UPSet& b)
{
    const std::uint64_t w = window(a, b);
    const std::uint64_t tail_start = w - std::lcm(a.period(), b.period());
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < w; ++n)
        if (a.contains(n) && !b.contains(n)) {
            if (n >= tail_start)
                return std::nullopt;
            ++count;
        }
    return count;
}

Order brute_compare(const UPSet& a, const UPSet& b)
{
    const auto ab = brute_difference(a, b), ba = brute_difference(b, a);
    if (!ab && !ba)
        return Order::incomparable;
    if (!ab)
        return Order::gt;
    if (!ba)
        return Order::lt;
    return *ab < *ba ? Order::lt : *ab > *ba ? Order::gt : Order::eq;
}

bool at_most(Order o) { return o == Order::lt || o == Order::eq; }

}  // namespace

TEST(UPSet, NormalForm)
{
    EXPECT_EQ(UPSet::make({true, false, true, false}, {}), UPSet::evens());
    EXPECT_EQ(UPSet::make({true, false}, {true, false, true, false}), UPSet::evens());
    EXPECT_EQ(UPSet::evens().unite(UPSet::odds()), UPSet::naturals());
    EXPECT_EQ(UPSet::tail(0), UPSet::naturals());
    EXPECT_EQ(UPSet::evens().period(), 2u);
    EXPECT_EQ(UPSet::evens().threshold(), 0u);
    EXPECT_EQ(UPSet::evens().to_string(), "(0 mod 2)");
    EXPECT_EQ(UPSet::tail(3).to_string(), "N - {0,1,2}");
    const std::uint64_t m[] = {4, 1};
    EXPECT_EQ(UPSet::finite(m).to_string(), "{1,4}");
    EXPECT_THROW(UPSet::make({}, {}), Error);
}

TEST(UPSet, OperationExamples)
{
    const UPSetOps a = upset_ops(UPSet::evens(), UPSet::odds());
    EXPECT_EQ(a.difference, UPSet::evens());
    EXPECT_FALSE(a.difference_cardinality);
    const std::uint64_t one[] = {1};
    const UPSetOps b = upset_ops(UPSet::evens().unite(UPSet::finite(one)), UPSet::evens());
    EXPECT_EQ(b.difference, UPSet::finite(one));
    EXPECT_EQ(b.difference_cardinality, 1u);
    EXPECT_EQ(difference_cardinality(UPSet::naturals(), UPSet::tail(5)), 5u);
    EXPECT_EQ(UPSet::naturals().first(3), (std::vector<std::uint64_t>{0, 1, 2}));
}

TEST(UPSet, CompareExamples)
{
    const std::uint64_t one[] = {1}, zero[] = {0}, two[] = {2};
    EXPECT_EQ(nonarch_compare(UPSet::evens(), UPSet::evens().unite(UPSet::finite(one))), Order::lt);
    EXPECT_EQ(nonarch_compare(UPSet::evens(), UPSet::odds()), Order::incomparable);
    EXPECT_EQ(nonarch_compare(UPSet::finite(zero), UPSet::finite(two)), Order::eq);
    EXPECT_EQ(value_of(UPSet::finite(zero)), value_of(UPSet::finite(two)));
}

TEST(UPSet, Parser)
{
    EXPECT_EQ(parse_upset("evens"), UPSet::evens());
    EXPECT_EQ(parse_upset("~evens"), UPSet::odds());
    EXPECT_EQ(parse_upset("N - {0, 1}"), UPSet::tail(2));
    EXPECT_EQ(parse_upset("2n+1"), UPSet::odds());
    EXPECT_EQ(parse_upset("4n | 4n+2"), UPSet::evens());
    EXPECT_EQ(parse_upset("tail(3) & evens"), UPSet::evens().minus(parse_upset("{0,2}")));
    EXPECT_EQ(parse_upset("~(evens | odds)"), UPSet::empty());
    EXPECT_EQ(parse_upset("empty"), UPSet::empty());
    EXPECT_EQ(parse_upset("{}"), UPSet::empty());
    for (const char* bad : {"", "evns", "{1,", "0n", "(evens", "evens odds", "3"}) {
        try {
            parse_upset(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::parse_error) << bad;
        }
    }
}

TEST(Galaxy, ValuesAndRepresentatives)
{
    const GalaxyValue v = value_of(parse_upset("evens - {0,2} | {1}"));
    EXPECT_EQ(v.core, UPSet::evens());
    EXPECT_EQ(v.offset, -1);
    EXPECT_EQ(value_of(representative(v)), v);
    EXPECT_THROW(representative({UPSet::empty(), -1}), Error);
    EXPECT_THROW(representative({UPSet::naturals(), 1}), Error);
    EXPECT_EQ(compare(v, value_of(UPSet::evens())), Order::lt);
    EXPECT_EQ(compare(value_of(UPSet::residue(0, 4)), v), Order::lt);
}

TEST(Infinitesimal, Examples)
{
    const InfinitesimalReport zero = is_infinitesimal(value_of(UPSet::empty()));
    EXPECT_TRUE(zero.infinitesimal);
    const std::uint64_t three[] = {0, 5, 9};
    const GalaxyValue v3 = value_of(UPSet::finite(three));
    const InfinitesimalReport r = is_infinitesimal(v3);
    ASSERT_TRUE(r.infinitesimal);
    ASSERT_EQ(r.witness.size(), 8u);
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        EXPECT_FALSE(r.witness[i].is_finite());
        EXPECT_TRUE(at_most(compare(v3, value_of(r.witness[i]))));
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
            EXPECT_TRUE(r.witness[i].intersect(r.witness[j]) == UPSet::empty());
    }
    const InfinitesimalReport e = is_infinitesimal(value_of(UPSet::evens()));
    EXPECT_FALSE(e.infinitesimal);
    EXPECT_FALSE(e.argument.empty());
}

TEST(Infinitesimal, NoDisjointPairAboveEvensAmongSmallPeriods)
{
    // every periodic set of period ≤ 8 whose value is at least that of evens
    const GalaxyValue evens = value_of(UPSet::evens());
    std::vector<UPSet> above;
    for (int p = 1; p <= 8; ++p)
        for (unsigned bits = 1; bits < (1u << p); ++bits) {
            std::vector<bool> res(p);
            for (int r = 0; r < p; ++r)
                res[r] = bits >> r & 1u;
            const UPSet s = UPSet::make(res, {});
            if (at_most(compare(evens, value_of(s))))
                above.push_back(s);
        }
    ASSERT_GT(above.size(), 10u);
    for (std::size_t i = 0; i < above.size(); ++i)
        for (std::size_t j = i + 1; j < above.size(); ++j)
            ASSERT_FALSE(above[i].intersect(above[j]).is_finite());
}

TEST(DividedWitness, Examples)
{
    const std::uint64_t zero[] = {0}, one[] = {1};
    const UPSet w1 = divided_witness(UPSet::finite(zero), UPSet::evens());
    EXPECT_TRUE(w1.subset_of(UPSet::evens()));
    EXPECT_EQ(nonarch_compare(w1, UPSet::finite(zero)), Order::eq);
    const UPSet a2 = UPSet::evens().unite(UPSet::finite(one));
    EXPECT_EQ(nonarch_compare(divided_witness(a2, UPSet::naturals()), a2), Order::eq);
    const UPSet fours = UPSet::residue(0, 4);
    EXPECT_EQ(nonarch_compare(divided_witness(fours, UPSet::evens()), fours), Order::eq);
    EXPECT_THROW(divided_witness(UPSet::evens(), UPSet::odds()), Error);
}

TEST(Discontinuity, Report)
{
    const DiscontinuityReport r = discontinuity_witness();
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.sampled, (std::vector<std::uint64_t>{0, 10, 1000}));
    EXPECT_EQ(r.lower_bound.offset, 5);
    EXPECT_TRUE(r.lower_bound.core.is_finite());
    const std::uint64_t more[] = {3, 77};
    EXPECT_TRUE(discontinuity_witness(more, 16).ok());
}

TEST(GalaxyShift, BreaksComplements)
{
    const GalaxyShiftWitness w = galaxy_shift_witness();
    EXPECT_TRUE(w.breaks);
    EXPECT_EQ(w.shifted_complement, (GalaxyValue{UPSet::odds(), 0}));
    EXPECT_EQ(w.complement_of_shift, (GalaxyValue{UPSet::odds(), -1}));
}

TEST(NonarchProperty, OperationsMatchMembership)
{
    check::Gen g(61);
    for (int trial = 0; trial < 300; ++trial) {
        const UPSet a = check::random_upset(g), b = check::random_upset(g);
        const UPSetOps r = upset_ops(a, b);
        for (std::uint64_t n = 0; n < window(a, b) + 8; ++n) {
            ASSERT_EQ(r.unite.contains(n), a.contains(n) || b.contains(n));
            ASSERT_EQ(r.intersect.contains(n), a.contains(n) && b.contains(n));
            ASSERT_EQ(r.complement.contains(n), !a.contains(n));
            ASSERT_EQ(r.difference.contains(n), a.contains(n) && !b.contains(n));
        }
        ASSERT_EQ(r.difference_cardinality, brute_difference(a, b));
        ASSERT_EQ(nonarch_compare(a, b), brute_compare(a, b));
        ASSERT_EQ(nonarch_compare(a, b), compare(value_of(a), value_of(b)));
        // structural equality is set equality
        ASSERT_EQ(a == b, r.difference.is_finite() && r.difference.size() == 0 && b.minus(a) == UPSet::empty());
        ASSERT_EQ(parse_upset(a.to_string()), a);
    }
}

TEST(NonarchProperty, ScalingAxiomsOnSamples)
{
    check::Gen g(62);
    for (int trial = 0; trial < 300; ++trial) {
        const UPSet a = check::random_upset(g), b = check::random_upset(g);
        const UPSet small = a.intersect(b), big = a.unite(b);
        if (small != big)
            ASSERT_EQ(nonarch_compare(small, big), Order::lt);
        if (nonarch_compare(a, b) == Order::lt)
            ASSERT_EQ(nonarch_compare(b.complement(), a.complement()), Order::lt);
    }
}

TEST(NonarchProperty, DividedWitnessOnRandomPairs)
{
    check::Gen g(63);
    int checked = 0;
    while (checked < 200) {
        const UPSet a = check::random_upset(g), b = check::random_upset(g).unite(g.coin() ? a : UPSet::empty());
        if (nonarch_compare(a, b) != Order::lt)
            continue;
        const UPSet w = divided_witness(a, b);
        ASSERT_TRUE(w.subset_of(b));
        ASSERT_NE(w, b);
        ASSERT_EQ(nonarch_compare(w, a), Order::eq);
        ++checked;
    }
}

TEST(NonarchProperty, ImmediateNeighbours)
{
    check::Gen g(64);
    for (int trial = 0; trial < 200; ++trial) {
        const UPSet a = check::random_upset(g);
        const GalaxyValue v = value_of(a);
        if (!a.is_finite() || a.size() > 0) {
            const auto p = predecessor(v);
            ASSERT_TRUE(p);
            const std::uint64_t least[] = {a.first(1).front()};
            ASSERT_EQ(value_of(a.minus(UPSet::finite(least))), *p);
            for (int k = 0; k < 20; ++k) {
                const GalaxyValue w = value_of(check::random_upset(g));
                ASSERT_FALSE(compare(*p, w) == Order::lt && compare(w, v) == Order::lt);
            }
        } else {
            ASSERT_FALSE(predecessor(v));
        }
        if (a != UPSet::naturals()) {
            const auto s = successor(v);
            ASSERT_TRUE(s);
            const std::uint64_t gap[] = {a.complement().first(1).front()};
            ASSERT_EQ(value_of(a.unite(UPSet::finite(gap))), *s);
        } else {
            ASSERT_FALSE(successor(v));
        }
    }
}

TEST(NonarchProperty, ShiftPreservesOrderOnSamples)
{
    const UPSet moved = UPSet::evens();
    auto shift = [&](GalaxyValue v) {
        if (v.core == moved)
            ++v.offset;
        return v;
    };
    check::Gen g(65);
    for (int trial = 0; trial < 300; ++trial) {
        UPSet a = check::random_upset(g), b = check::random_upset(g);
        if (g.coin())
            a = UPSet::evens().unite(UPSet::finite(a.first(2)));
        if (g.coin())
            b = UPSet::evens().minus(UPSet::finite(b.first(2)));
        const GalaxyValue va = value_of(a), vb = value_of(b);
        ASSERT_EQ(compare(shift(va), shift(vb)), compare(va, vb));
    }
}

TEST(NonarchProperty, IncomparablePairsHaveNoLeastUpperBound)
{
    const GalaxyValue e = value_of(UPSet::evens()), o = value_of(UPSet::odds());
    check::Gen g(66);
    int bounds = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const UPSet s = check::random_upset(g).unite(g.coin() ? UPSet::naturals() : UPSet::empty());
        const GalaxyValue u = value_of(s);
        if (!(at_most(compare(e, u)) && at_most(compare(o, u))))
            continue;
        ++bounds;
        const auto below = predecessor(u);
        ASSERT_TRUE(below);
        EXPECT_TRUE(at_most(compare(e, *below)) && at_most(compare(o, *below)));
    }
    EXPECT_GT(bounds, 20);
}

#include "sba/catalog.hpp"
#include "sba/cf_arith.hpp"
#include "sba/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sba;
using check::q;

namespace {

ClassId cls(const Scaling& s, Mask x) { return s.class_of(x); }

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::parse_error;
}

}  // namespace

TEST(ContinuedFraction, UniformThirds)
{
    const Scale s(uniform_scaling(3));
    const Scaling& sc = s.scaling();
    EXPECT_EQ(continued_fraction(s, cls(sc, 0b011), cls(sc, 0b001)).entries, (std::vector<std::int64_t>{2}));
    const ContinuedFraction third = continued_fraction(s, cls(sc, 0b001), s.one());
    EXPECT_EQ(third.entries, (std::vector<std::int64_t>{0, 3}));
    EXPECT_EQ(third.to_string(), "[0; 3]");
    EXPECT_EQ(third.value(), q(1, 3));
    for (ClassId c = 1; c < s.size(); ++c)
        EXPECT_EQ(continued_fraction(s, c, c).entries, (std::vector<std::int64_t>{1}));
}

TEST(ContinuedFraction, Errors)
{
    const Scale u(uniform_scaling(3));
    EXPECT_EQ(code_of([&] { continued_fraction(u, u.one(), u.zero()); }), ErrorCode::zero_denominator);
    const Scale mid(middlescale());
    EXPECT_EQ(code_of([&] { continued_fraction(mid, mid.one(), mid.one()); }), ErrorCode::not_linear);
    const std::vector<std::vector<Rational>> m = {{q(1, 6), q(2, 6), q(3, 6)}};
    const Scale raw(scaling_from_measures(letter_algebra(3), m));
    EXPECT_EQ(raw.size(), 7);
    EXPECT_EQ(code_of([&] { canonical_measure(raw); }), ErrorCode::not_divided);
}

TEST(ContinuedFraction, ValueAndFormatting)
{
    EXPECT_EQ((ContinuedFraction{{0, 1, 2}}).value(), q(2, 3));
    EXPECT_EQ((ContinuedFraction{{0, 1, 2}}).to_string(), "[0; 1, 2]");
    EXPECT_EQ((ContinuedFraction{{2}}).to_string(), "[2]");
}

TEST(CanonicalMeasure, Uniform)
{
    const Scale s(uniform_scaling(3));
    EXPECT_EQ(canonical_measure(s).value, (std::vector<Rational>{q(0), q(1, 3), q(2, 3), q(1)}));
}

TEST(CanonicalMeasure, RecoversSixths)
{
    const std::vector<Rational> m = {q(1, 6), q(2, 6), q(3, 6)};
    const UnitRefinement r = unit_refinement(letter_algebra(3), m);
    EXPECT_EQ(r.scaling.algebra().atom_count(), 6);
    const Scale s(r.scaling);
    const CanonicalMeasure mu = canonical_measure(s);
    for (Mask x = 0; x < 8; ++x)
        EXPECT_EQ(mu.value[r.scaling.class_of(r.embed(x))], check::mass_of(m, x));
}

TEST(Multiply, Examples)
{
    const Scale u(uniform_scaling(3));
    const Scaling& sc = u.scaling();
    EXPECT_FALSE(scale_multiply(u, cls(sc, 0b001), cls(sc, 0b010)));
    for (ClassId c = 0; c < u.size(); ++c)
        EXPECT_EQ(scale_multiply(u, c, u.one()), c);

    const std::vector<Rational> m = {q(1, 4), q(1, 4), q(1, 2)};
    const UnitRefinement r = unit_refinement(letter_algebra(3), m);
    const Scale s(r.scaling);
    const ClassId ab = r.scaling.class_of(r.embed(0b011)), a = r.scaling.class_of(r.embed(0b001));
    EXPECT_EQ(scale_multiply(s, ab, ab), a);
}

TEST(Conditional, Examples)
{
    const Scaling u = uniform_scaling(3);
    EXPECT_EQ(conditional_probability(u, 0b001, 0b011), q(1, 2));
    EXPECT_EQ(conditional_probability(u, 0b011, 0b011), 1);
    EXPECT_EQ(conditional_probability(u, 0, 0b011), 0);
    EXPECT_EQ(code_of([&] { conditional_probability(u, 0b001, 0); }), ErrorCode::condition_on_zero);
}

TEST(ProductRule, Examples)
{
    const Scaling u = uniform_scaling(3);
    const ProductRuleReport r = verify_product_rule(u, 0b001, 0b011);
    EXPECT_TRUE(r.ok) << r.failure;
    EXPECT_EQ(r.joint, q(1, 3));
    EXPECT_EQ(r.conditional, q(1, 2));
    EXPECT_EQ(r.marginal, q(2, 3));
    EXPECT_EQ(r.joint_over_marginal, r.conditional_over_one);
    EXPECT_TRUE(verify_product_rule(u, 0b110, 0b110).ok);
}

TEST(UnitRefinement, Errors)
{
    const Algebra alg = letter_algebra(2);
    EXPECT_EQ(code_of([&] { unit_refinement(alg, std::vector<Rational>{q(0), q(1)}); }), ErrorCode::nonpositive_mass);
    EXPECT_EQ(code_of([&] { unit_refinement(alg, std::vector<Rational>{q(1, 2), q(1, 3)}); }),
              ErrorCode::invalid_argument);
    EXPECT_EQ(code_of([&] { unit_refinement(alg, std::vector<Rational>{q(1, 17), q(16, 17)}); }),
              ErrorCode::unsupported_size);
}

TEST(CfProperty, RefinedMeasuresMatchTheOrdinaryExpansion)
{
    check::Gen g(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = g.uniform(1, 4);
        const std::vector<Rational> m = g.small_measure(n);
        const UnitRefinement r = unit_refinement(letter_algebra(n), m);
        const Scale s(r.scaling);
        const CanonicalMeasure mu = canonical_measure(s);
        for (Mask x = 0; x < (Mask{1} << n); ++x) {
            const ClassId c = r.scaling.class_of(r.embed(x));
            ASSERT_EQ(mu.value[c], check::mass_of(m, x));
            ASSERT_EQ(continued_fraction(s, c, s.one()).entries, check::euclid(check::mass_of(m, x)));
        }
        // strictly increasing and additive on defined sums
        for (ClassId a = 0; a < s.size(); ++a)
            for (ClassId b = 0; b < s.size(); ++b) {
                if (s.lt(a, b))
                    ASSERT_LT(mu.value[a], mu.value[b]);
                if (auto sum = s.add(a, b))
                    ASSERT_EQ(mu.value[*sum], mu.value[a] + mu.value[b]);
            }
        // expansions over a fixed nonzero denominator are injective
        const ClassId den = g.uniform(1, s.size() - 1);
        std::set<std::vector<std::int64_t>> seen;
        for (ClassId c = 0; c < s.size(); ++c)
            ASSERT_TRUE(seen.insert(continued_fraction(s, c, den).entries).second);
    }
}

TEST(CfProperty, MultiplicationLaws)
{
    check::Gen g(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = g.uniform(1, 3);
        const UnitRefinement r = unit_refinement(letter_algebra(n), g.small_measure(n));
        const Scale s(r.scaling);
        for (ClassId a = 0; a < s.size(); ++a)
            for (ClassId b = 0; b < s.size(); ++b) {
                const auto ab = scale_multiply(s, a, b);
                ASSERT_EQ(ab, scale_multiply(s, b, a));
                for (ClassId c = 0; c < s.size() && ab; ++c) {
                    const auto bc = scale_multiply(s, b, c);
                    const auto left = scale_multiply(s, *ab, c);
                    if (bc && left)
                        ASSERT_EQ(left, scale_multiply(s, a, *bc));
                }
            }
    }
}

TEST(CfProperty, ProductRuleAgainstMeasureRatios)
{
    check::Gen g(43);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = g.uniform(1, 4);
        const std::vector<Rational> m = g.small_measure(n);
        const UnitRefinement r = unit_refinement(letter_algebra(n), m);
        const Algebra& fine = r.scaling.algebra();
        const Mask z = g.mask(fine) | Mask{1};
        const Mask x = g.mask(fine);
        const ProductRuleReport rep = verify_product_rule(r.scaling, x, z);
        ASSERT_TRUE(rep.ok) << rep.failure;
        const Rational unit = q(1, fine.atom_count());
        ASSERT_EQ(rep.conditional, Rational(popcount(x & z) * unit / (popcount(z) * unit)));
    }
}

#include "sba/lp.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace sba;
using check::q;

namespace {

lp::Constraint row(std::vector<Rational> coef, lp::Relation rel, Rational rhs) { return {std::move(coef), rel, std::move(rhs)}; }

}  // namespace

TEST(Simplex, SmallMaximum)
{
    // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
    lp::Problem p{2, {3, 2}, {}};
    p.constraints.push_back(row({1, 1}, lp::Relation::le, 4));
    p.constraints.push_back(row({1, 3}, lp::Relation::le, 6));
    p.constraints.push_back(row({1, 0}, lp::Relation::le, 3));
    const lp::Solution s = lp::maximize(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_EQ(s.objective, 11);
    EXPECT_EQ(s.x[0], 3);
    EXPECT_EQ(s.x[1], 1);
}

TEST(Simplex, ExactFractions)
{
    // max x + y, 3x + y ≤ 2, x + 3y ≤ 2: optimum at (1/2, 1/2)
    lp::Problem p{2, {1, 1}, {}};
    p.constraints.push_back(row({3, 1}, lp::Relation::le, 2));
    p.constraints.push_back(row({1, 3}, lp::Relation::le, 2));
    const lp::Solution s = lp::maximize(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_EQ(s.objective, 1);
    EXPECT_EQ(s.x[0], q(1, 2));
}

TEST(Simplex, InfeasibleAndUnbounded)
{
    lp::Problem bad{1, {1}, {}};
    bad.constraints.push_back(row({1}, lp::Relation::ge, 2));
    bad.constraints.push_back(row({1}, lp::Relation::le, 1));
    EXPECT_EQ(lp::maximize(bad).status, lp::Status::infeasible);

    lp::Problem open{2, {1, 1}, {}};
    open.constraints.push_back(row({1, -1}, lp::Relation::le, 1));
    EXPECT_EQ(lp::maximize(open).status, lp::Status::unbounded);
}

TEST(Simplex, EqualitiesAndMinimize)
{
    // min x + 2y + 3z, x + y + z = 1, y ≥ 1/4, z - x = 0
    lp::Problem p{3, {1, 2, 3}, {}};
    p.constraints.push_back(row({1, 1, 1}, lp::Relation::eq, 1));
    p.constraints.push_back(row({0, 1, 0}, lp::Relation::ge, q(1, 4)));
    p.constraints.push_back(row({-1, 0, 1}, lp::Relation::eq, 0));
    const lp::Solution s = lp::minimize(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_EQ(s.x[0], q(3, 8));
    EXPECT_EQ(s.x[2], q(3, 8));
    EXPECT_EQ(s.objective, q(3, 8) + q(1, 2) + q(9, 8));
}

TEST(Simplex, DegenerateCycleProneProblem)
{
    // Beale's cycling example; Bland's rule must terminate at 1/20
    lp::Problem p{4, {q(3, 4), -150, q(1, 50), -6}, {}};
    p.constraints.push_back(row({q(1, 4), -60, q(-1, 25), 9}, lp::Relation::le, 0));
    p.constraints.push_back(row({q(1, 2), -90, q(-1, 50), 3}, lp::Relation::le, 0));
    p.constraints.push_back(row({0, 0, 1, 0}, lp::Relation::le, 1));
    const lp::Solution s = lp::maximize(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_EQ(s.objective, q(1, 20));
}

TEST(SimplexProperty, OptimumBeatsGridPoints)
{
    check::Gen g(31);
    for (int trial = 0; trial < 100; ++trial) {
        lp::Problem p{2, {g.uniform(-3, 5), g.uniform(-3, 5)}, {}};
        for (int k = 0; k < 3; ++k)
            p.constraints.push_back(row({g.uniform(1, 4), g.uniform(1, 4)}, lp::Relation::le, g.uniform(1, 9)));
        const lp::Solution s = lp::maximize(p);
        ASSERT_EQ(s.status, lp::Status::optimal);
        for (const auto& c : p.constraints)
            EXPECT_LE(c.coef[0] * s.x[0] + c.coef[1] * s.x[1], c.rhs);
        for (int x = 0; x <= 36; ++x)
            for (int y = 0; y <= 36; ++y) {
                const Rational px = q(x, 4), py = q(y, 4);
                bool ok = true;
                for (const auto& c : p.constraints)
                    ok = ok && c.coef[0] * px + c.coef[1] * py <= c.rhs;
                if (ok)
                    EXPECT_LE(p.objective[0] * px + p.objective[1] * py, s.objective);
            }
    }
}

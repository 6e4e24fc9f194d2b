#pragma once

#include "sba/rational.hpp"

#include <cstddef>
#include <vector>

namespace sba::lp {

enum class Relation { le, ge, eq };

struct Constraint {
    std::vector<Rational> coef;
    Relation rel = Relation::le;
    Rational rhs;
};

/// max objective·x subject to the constraints and x ≥ 0.
struct Problem {
    int variables = 0;
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    Rational objective;
    std::vector<Rational> x;
    std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule picks
/// both the entering and the leaving variable, so it cannot cycle.
Solution maximize(const Problem& p);
Solution minimize(const Problem& p);

}  // namespace sba::lp

#include "sba/lp.hpp"

#include "sba/error.hpp"

namespace sba::lp {

namespace {

struct Tableau {
    std::vector<std::vector<Rational>> rows;  // last entry is the right-hand side
    std::vector<int> basis;
    std::vector<Rational> reduced;  // c_j - z_j, last entry is -value
    std::size_t pivots = 0;

    int width() const { return static_cast<int>(reduced.size()) - 1; }

    void pivot(int r, int c)
    {
        auto& pr = rows[r];
        const Rational inv = 1 / pr[c];
        for (auto& v : pr)
            v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r || sgn(rows[i][c]) == 0)
                continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < pr.size(); ++j)
                if (sgn(pr[j]) != 0)
                    rows[i][j] -= f * pr[j];
        }
        if (sgn(reduced[c]) != 0) {
            const Rational f = reduced[c];
            for (std::size_t j = 0; j < pr.size(); ++j)
                if (sgn(pr[j]) != 0)
                    reduced[j] -= f * pr[j];
        }
        basis[r] = c;
        ++pivots;
    }

    void price(const std::vector<Rational>& cost)
    {
        reduced.assign(rows.empty() ? cost.size() + 1 : rows.front().size(), 0);
        for (std::size_t j = 0; j < cost.size(); ++j)
            reduced[j] = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational cb = basis[i] < static_cast<int>(cost.size()) ? cost[basis[i]] : Rational(0);
            if (sgn(cb) == 0)
                continue;
            for (std::size_t j = 0; j < reduced.size(); ++j)
                reduced[j] -= cb * rows[i][j];
        }
    }

    // Maximizes over columns < limit. Returns false if unbounded.
    bool optimize(int limit)
    {
        while (true) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (sgn(reduced[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter < 0)
                return true;
            int leave = -1;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (sgn(rows[i][enter]) <= 0)
                    continue;
                Rational ratio = rows[i].back() / rows[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

Solution maximize(const Problem& p)
{
    const int n = p.variables;
    if (static_cast<int>(p.objective.size()) != n)
        throw Error(ErrorCode::invalid_argument, "objective length does not match the variable count");
    const int m = static_cast<int>(p.constraints.size());

    std::vector<Constraint> rows = p.constraints;
    int slacks = 0;
    int artificials = 0;
    for (auto& c : rows) {
        if (static_cast<int>(c.coef.size()) != n)
            throw Error(ErrorCode::invalid_argument, "constraint length does not match the variable count");
        if (sgn(c.rhs) < 0) {
            for (auto& v : c.coef)
                v = -v;
            c.rhs = -c.rhs;
            if (c.rel == Relation::le)
                c.rel = Relation::ge;
            else if (c.rel == Relation::ge)
                c.rel = Relation::le;
        }
        if (c.rel != Relation::eq)
            ++slacks;
        if (c.rel != Relation::le)
            ++artificials;
    }
    const int first_art = n + slacks;
    const int cols = first_art + artificials;

    Tableau t;
    t.rows.assign(m, std::vector<Rational>(cols + 1, 0));
    t.basis.assign(m, -1);
    int s = n;
    int a = first_art;
    for (int i = 0; i < m; ++i) {
        auto& r = t.rows[i];
        for (int j = 0; j < n; ++j)
            r[j] = rows[i].coef[j];
        r[cols] = rows[i].rhs;
        switch (rows[i].rel) {
        case Relation::le:
            r[s] = 1;
            t.basis[i] = s++;
            break;
        case Relation::ge:
            r[s++] = -1;
            r[a] = 1;
            t.basis[i] = a++;
            break;
        case Relation::eq:
            r[a] = 1;
            t.basis[i] = a++;
            break;
        }
    }

    Solution sol;
    if (artificials > 0) {
        std::vector<Rational> phase1(cols, 0);
        for (int j = first_art; j < cols; ++j)
            phase1[j] = -1;
        t.price(phase1);
        t.optimize(cols);
        if (sgn(t.reduced.back()) != 0) {  // -value of phase one
            sol.status = Status::infeasible;
            sol.pivots = t.pivots;
            return sol;
        }
        // drive remaining artificials out of the basis
        for (int i = 0; i < static_cast<int>(t.rows.size());) {
            if (t.basis[i] < first_art) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_art && col < 0; ++j)
                if (sgn(t.rows[i][j]) != 0)
                    col = j;
            if (col >= 0) {
                t.pivot(i, col);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
    }

    std::vector<Rational> cost(cols, 0);
    for (int j = 0; j < n; ++j)
        cost[j] = p.objective[j];
    t.price(cost);
    const bool bounded = t.optimize(first_art);
    sol.pivots = t.pivots;
    if (!bounded) {
        sol.status = Status::unbounded;
        return sol;
    }
    sol.status = Status::optimal;
    sol.x.assign(n, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n)
            sol.x[t.basis[i]] = t.rows[i].back();
    sol.objective = 0;
    for (int j = 0; j < n; ++j)
        sol.objective += p.objective[j] * sol.x[j];
    return sol;
}

Solution minimize(const Problem& p)
{
    Problem q = p;
    for (auto& c : q.objective)
        c = -c;
    Solution s = maximize(q);
    s.objective = -s.objective;
    return s;
}

}  // namespace sba::lp

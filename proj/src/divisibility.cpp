#include "sba/divisibility.hpp"

#include "sba/error.hpp"
#include "sba/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sba {

namespace {

using Form = std::vector<int>;

Form form_of(Mask lesser, Mask greater, int n)
{
    Form f(n, 0);
    for (int t = 0; t < n; ++t)
        f[t] = static_cast<int>(greater >> t & 1u) - static_cast<int>(lesser >> t & 1u);
    return f;
}

// Distinct linear forms with the row that introduced each; rows whose
// lesser side is contained in the greater side follow from positivity and
// are skipped when `skip_implied` is set.
struct FormSet {
    std::vector<Form> forms;
    std::vector<std::size_t> row;
};

FormSet distinct_forms(const std::vector<Comparison>& rows, int n, bool skip_implied)
{
    std::map<Form, std::size_t> seen;
    FormSet out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (skip_implied && is_submask(r.lesser, r.greater))
            continue;
        Form f = form_of(r.lesser, r.greater, n);
        auto it = seen.find(f);
        const int size = popcount(r.lesser) + popcount(r.greater);
        if (it == seen.end()) {
            seen.emplace(f, out.forms.size());
            out.forms.push_back(std::move(f));
            out.row.push_back(i);
        } else {
            auto& kept = out.row[it->second];
            if (size < popcount(rows[kept].lesser) + popcount(rows[kept].greater))
                kept = i;
        }
    }
    return out;
}

// Unique solution of a square system, or nullopt if singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0)
                continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j)
                a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return b;
}

// Keeps a maximal independent subset of the rows (with right-hand sides).
void independent_rows(std::vector<std::vector<Rational>>& rows, std::vector<Rational>& rhs)
{
    std::vector<std::vector<Rational>> basis;  // reduced copies
    std::vector<int> pivot_col;
    std::vector<std::vector<Rational>> kept;
    std::vector<Rational> kept_rhs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto r = rows[i];
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const int c = pivot_col[k];
            if (sgn(r[c]) == 0)
                continue;
            const Rational f = r[c] / basis[k][c];
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] -= f * basis[k][j];
        }
        auto nz = std::find_if(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
        if (nz == r.end())
            continue;
        pivot_col.push_back(static_cast<int>(nz - r.begin()));
        basis.push_back(std::move(r));
        kept.push_back(rows[i]);
        kept_rhs.push_back(rhs[i]);
    }
    rows = std::move(kept);
    rhs = std::move(kept_rhs);
}

std::vector<Integer> to_coprime_integers(const std::vector<Rational>& v)
{
    const Integer l = lcm_of_denominators(v);
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& q : v) {
        Rational scaled = q * l;
        out.push_back(scaled.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& z : out)
            z /= g;
    return out;
}

}  // namespace

std::optional<DividedCounterexample> is_divided(const Scaling& s)
{
    const Mask full = s.algebra().full_mask();
    const int k = s.class_count();
    const std::size_t words = (static_cast<std::size_t>(k) + 63) / 64;
    if (words > 8) {
        // subset scan, too many classes for per-element bitsets
        std::vector<char> below(k);
        for (Mask y = 0; y <= full; ++y) {
            std::fill(below.begin(), below.end(), 0);
            if (y != 0)
                for (Mask x = (y - 1) & y;; x = (x - 1) & y) {
                    below[s.class_of(x)] = 1;
                    if (x == 0)
                        break;
                }
            const ClassId cy = s.class_of(y);
            for (ClassId c = 0; c < k; ++c)
                if (s.lt(c, cy) && !below[c])
                    return DividedCounterexample{s.representative(c), y};
        }
        return std::nullopt;
    }
    // classes of proper subsets, built from the one-atom-smaller subsets
    std::vector<std::uint64_t> below((std::size_t{full} + 1) * words, 0);
    for (Mask y = 0; y <= full; ++y) {
        std::uint64_t* by = &below[y * words];
        for (Mask rest = y; rest; rest &= rest - 1) {
            const Mask x = y & ~(rest & -rest);
            const std::uint64_t* bx = &below[x * words];
            for (std::size_t w = 0; w < words; ++w)
                by[w] |= bx[w];
            const auto cx = static_cast<std::size_t>(s.class_of(x));
            by[cx / 64] |= std::uint64_t{1} << (cx % 64);
        }
        const ClassId cy = s.class_of(y);
        for (ClassId c = 0; c < k; ++c)
            if (s.lt(c, cy) && !(by[c / 64] >> (c % 64) & 1u))
                return DividedCounterexample{s.representative(c), y};
    }
    return std::nullopt;
}

std::vector<int> TupleRep::rep(Mask x) const
{
    std::vector<int> out(partition.size(), 0);
    for (std::size_t t = 0; t < block_of_atom.size(); ++t)
        if (x >> t & 1u)
            ++out[block_of_atom[t]];
    return out;
}

TupleRep kleene_tuple_representation(const Scaling& s)
{
    if (auto bad = is_divided(s))
        throw Error(ErrorCode::not_divided, "scaling is not divided: " + s.algebra().format(bad->x) + " vs " +
                                                s.algebra().format(bad->y));
    const int n = s.algebra().atom_count();
    TupleRep r;
    r.block_of_atom.assign(n, -1);
    std::map<ClassId, int> block_of_class;
    for (int t = 0; t < n; ++t) {
        const ClassId c = s.class_of(Mask{1} << t);
        auto [it, fresh] = block_of_class.emplace(c, static_cast<int>(r.partition.size()));
        if (fresh)
            r.partition.emplace_back();
        r.partition[it->second].push_back(t);
        r.block_of_atom[t] = it->second;
    }
    const Mask full = s.algebra().full_mask();
    std::vector<std::vector<int>> tuples(std::size_t{full} + 1);
    for (Mask x = 0; x <= full; ++x)
        tuples[x] = r.rep(x);
    for (Mask x = 0; x <= full; ++x)
        for (Mask y = 0; y <= full; ++y) {
            const ClassId cx = s.class_of(x);
            const ClassId cy = s.class_of(y);
            const bool scale_le = s.le(cx, cy);
            bool tuple_le = true;
            for (std::size_t i = 0; i < tuples[x].size() && tuple_le; ++i)
                tuple_le = tuples[x][i] <= tuples[y][i];
            const bool cards_ok = cx == cy ? popcount(x) == popcount(y)
                                           : (!s.lt(cx, cy) || popcount(x) < popcount(y));
            if (scale_le != tuple_le || !cards_ok)
                throw Error(ErrorCode::order_mismatch, "count tuples disagree with the scaling at " +
                                                           s.algebra().format(x) + ", " + s.algebra().format(y));
        }
    return r;
}

ConstraintSystem build_constraints(const Scaling& s)
{
    ConstraintSystem c;
    c.variables = s.algebra().atom_count();
    const int k = s.class_count();
    for (ClassId i = 0; i < k; ++i)
        for (ClassId j = 0; j < k; ++j)
            if (s.lt(i, j))
                c.strict.push_back({s.representative(i), s.representative(j)});
    for (ClassId i = 0; i < k; ++i) {
        auto m = s.members(i);
        for (std::size_t j = 1; j < m.size(); ++j)
            c.equal.push_back({m[0], m[j]});
    }
    return c;
}

Rational Measure::value(Mask x) const
{
    Rational v = 0;
    for (std::size_t t = 0; t < mass.size(); ++t)
        if (x >> t & 1u)
            v += mass[t];
    return v;
}

bool satisfies(const ConstraintSystem& c, const Measure& m)
{
    if (static_cast<int>(m.mass.size()) != c.variables)
        return false;
    Rational total = 0;
    for (const auto& q : m.mass) {
        if (sgn(q) <= 0)
            return false;
        total += q;
    }
    if (total != 1)
        return false;
    for (const auto& r : c.strict)
        if (!(m.value(r.lesser) < m.value(r.greater)))
            return false;
    for (const auto& r : c.equal)
        if (m.value(r.lesser) != m.value(r.greater))
            return false;
    return true;
}

bool Certificate::verify(const ConstraintSystem& c) const
{
    const int n = c.variables;
    std::vector<Integer> sum(n, 0);
    bool positive = false;
    for (const auto& [i, w] : strict) {
        if (i >= c.strict.size() || w < 0)
            return false;
        positive = positive || w > 0;
        auto f = form_of(c.strict[i].lesser, c.strict[i].greater, n);
        for (int t = 0; t < n; ++t)
            sum[t] += w * f[t];
    }
    for (const auto& [t, w] : positivity) {
        if (t < 0 || t >= n || w < 0)
            return false;
        positive = positive || w > 0;
        sum[t] += w;
    }
    for (const auto& [i, w] : equal) {
        if (i >= c.equal.size())
            return false;
        auto f = form_of(c.equal[i].lesser, c.equal[i].greater, n);
        for (int t = 0; t < n; ++t)
            sum[t] += w * f[t];
    }
    return positive && std::all_of(sum.begin(), sum.end(), [](const Integer& z) { return z == 0; });
}

MeasureResult find_agreeing_measure(const ConstraintSystem& c)
{
    const int n = c.variables;
    const FormSet strict = distinct_forms(c.strict, n, true);
    const FormSet equal = distinct_forms(c.equal, n, false);

    // variables: masses, then eps+ and eps-
    lp::Problem p;
    p.variables = n + 2;
    p.objective.assign(n + 2, 0);
    p.objective[n] = 1;
    p.objective[n + 1] = -1;
    auto row = [&](const Form& f, int sign) {
        std::vector<Rational> coef(n + 2, 0);
        for (int t = 0; t < n; ++t)
            coef[t] = sign * f[t];
        return coef;
    };
    for (const auto& f : strict.forms) {
        auto coef = row(f, -1);
        coef[n] = 1;
        coef[n + 1] = -1;
        p.constraints.push_back({std::move(coef), lp::Relation::le, 0});
    }
    for (int t = 0; t < n; ++t) {
        std::vector<Rational> coef(n + 2, 0);
        coef[t] = -1;
        coef[n] = 1;
        coef[n + 1] = -1;
        p.constraints.push_back({std::move(coef), lp::Relation::le, 0});
    }
    for (const auto& f : equal.forms)
        p.constraints.push_back({row(f, 1), lp::Relation::eq, 0});
    {
        std::vector<Rational> coef(n + 2, 0);
        for (int t = 0; t < n; ++t)
            coef[t] = 1;
        p.constraints.push_back({std::move(coef), lp::Relation::eq, 1});
        std::vector<Rational> cap(n + 2, 0);
        cap[n] = 1;
        cap[n + 1] = -1;
        p.constraints.push_back({std::move(cap), lp::Relation::le, 1});
    }
    const lp::Solution sol = lp::maximize(p);
    if (sol.status != lp::Status::optimal)
        throw Error(ErrorCode::invalid_argument, "slack program did not reach an optimum");

    MeasureResult out;
    out.slack = sol.objective;
    if (sgn(sol.objective) > 0) {
        out.measure = Measure{std::vector<Rational>(sol.x.begin(), sol.x.begin() + n)};
        return out;
    }

    // Multipliers: y on strict forms, z on positivity, u = u+ - u- on equalities.
    const std::size_t ns = strict.forms.size();
    const std::size_t ne = equal.forms.size();
    lp::Problem q;
    q.variables = static_cast<int>(ns + n + 2 * ne);
    q.objective.assign(q.variables, 0);
    for (std::size_t i = 0; i < ns; ++i) {
        const auto& r = c.strict[strict.row[i]];
        q.objective[i] = popcount(r.lesser) + popcount(r.greater);
    }
    for (int t = 0; t < n; ++t)
        q.objective[ns + t] = 1;
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& r = c.equal[equal.row[e]];
        q.objective[ns + n + 2 * e] = q.objective[ns + n + 2 * e + 1] = popcount(r.lesser) + popcount(r.greater);
    }
    for (int t = 0; t < n; ++t) {
        std::vector<Rational> coef(q.variables, 0);
        for (std::size_t i = 0; i < ns; ++i)
            coef[i] = strict.forms[i][t];
        coef[ns + t] = 1;
        for (std::size_t e = 0; e < ne; ++e) {
            coef[ns + n + 2 * e] = equal.forms[e][t];
            coef[ns + n + 2 * e + 1] = -equal.forms[e][t];
        }
        q.constraints.push_back({std::move(coef), lp::Relation::eq, 0});
    }
    {
        std::vector<Rational> coef(q.variables, 0);
        for (std::size_t i = 0; i < ns + n; ++i)
            coef[i] = 1;
        q.constraints.push_back({std::move(coef), lp::Relation::eq, 1});
    }
    const lp::Solution dual = lp::minimize(q);
    if (dual.status != lp::Status::optimal)
        throw Error(ErrorCode::invalid_argument, "no infeasibility certificate found for an unmeasurable system");
    std::vector<Rational> raw(ns + n + ne);
    for (std::size_t i = 0; i < ns + n; ++i)
        raw[i] = dual.x[i];
    for (std::size_t e = 0; e < ne; ++e)
        raw[ns + n + e] = dual.x[ns + n + 2 * e] - dual.x[ns + n + 2 * e + 1];
    const auto w = to_coprime_integers(raw);
    Certificate cert;
    for (std::size_t i = 0; i < ns; ++i)
        if (w[i] != 0)
            cert.strict.emplace_back(strict.row[i], w[i]);
    for (int t = 0; t < n; ++t)
        if (w[ns + t] != 0)
            cert.positivity.emplace_back(t, w[ns + t]);
    for (std::size_t e = 0; e < ne; ++e)
        if (w[ns + n + e] != 0)
            cert.equal.emplace_back(equal.row[e], w[ns + n + e]);
    std::sort(cert.strict.begin(), cert.strict.end());
    std::sort(cert.equal.begin(), cert.equal.end());
    out.certificate = std::move(cert);
    return out;
}

MeasureResult find_agreeing_measure(const Scaling& s) { return find_agreeing_measure(build_constraints(s)); }

PolytopeVertices enumerate_polytope_vertices(const ConstraintSystem& c)
{
    const int n = c.variables;
    // equalities, including total mass 1
    std::vector<std::vector<Rational>> eq;
    std::vector<Rational> eq_rhs;
    for (const auto& f : distinct_forms(c.equal, n, false).forms) {
        eq.emplace_back(f.begin(), f.end());
        eq_rhs.push_back(0);
    }
    eq.emplace_back(n, Rational(1));
    eq_rhs.push_back(1);
    const auto all_eq = eq;
    const auto all_eq_rhs = eq_rhs;
    independent_rows(eq, eq_rhs);

    // closed inequalities form·m ≥ 0
    std::vector<Form> ineq = distinct_forms(c.strict, n, true).forms;
    for (int t = 0; t < n; ++t) {
        Form f(n, 0);
        f[t] = 1;
        ineq.push_back(std::move(f));
    }
    const int need = n - static_cast<int>(eq.size());
    std::vector<std::vector<Rational>> found;
    auto feasible = [&](const std::vector<Rational>& m) {
        for (const auto& f : ineq) {
            Rational v = 0;
            for (int t = 0; t < n; ++t)
                if (f[t] != 0)
                    v += f[t] * m[t];
            if (sgn(v) < 0)
                return false;
        }
        for (std::size_t i = 0; i < all_eq.size(); ++i) {
            Rational v = 0;
            for (int t = 0; t < n; ++t)
                v += all_eq[i][t] * m[t];
            if (v != all_eq_rhs[i])
                return false;
        }
        return true;
    };
    if (need < 0)
        throw Error(ErrorCode::empty_polytope, "equalities overdetermine the masses");
    const int total = static_cast<int>(ineq.size());
    if (need > total)
        throw Error(ErrorCode::empty_polytope, "too few constraints to pin a corner");
    std::vector<int> pick(need);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        auto a = eq;
        auto b = eq_rhs;
        for (int i : pick) {
            a.emplace_back(ineq[i].begin(), ineq[i].end());
            b.push_back(0);
        }
        if (auto m = solve(std::move(a), std::move(b)); m && feasible(*m))
            found.push_back(std::move(*m));
        // next combination
        int i = need - 1;
        while (i >= 0 && pick[i] == total - need + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < need; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    if (found.empty())
        throw Error(ErrorCode::empty_polytope, "the closed measure polytope is empty");
    std::sort(found.begin(), found.end(), std::greater<>());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    PolytopeVertices v;
    v.rows = std::move(found);
    for (const auto& r : v.rows)
        v.denominators.push_back(lcm_of_denominators(r));
    return v;
}

Mask Division::embed(Mask x) const
{
    Mask out = 0;
    for (std::size_t t = 0; t < atom_copies.size(); ++t)
        if (x >> t & 1u)
            out |= atom_copies[t];
    return out;
}

std::vector<int> Division::tuple(Mask x) const
{
    std::vector<int> out(class_sizes.size(), 0);
    for (std::size_t t = 0; t < sigma.size(); ++t)
        if (x >> t & 1u)
            for (std::size_t c = 0; c < out.size(); ++c)
                out[c] += sigma[t][c];
    return out;
}

DivisionResult construct_division(const Scaling& s)
{
    const ConstraintSystem sys = build_constraints(s);
    DivisionResult result;
    MeasureResult mr = find_agreeing_measure(sys);
    if (!mr.measurable()) {
        result.certificate = std::move(mr.certificate);
        return result;
    }
    Division d;
    d.vertices = enumerate_polytope_vertices(sys);
    const int n = s.algebra().atom_count();
    const std::size_t m = d.vertices.rows.size();
    d.sigma.assign(n, std::vector<int>(m, 0));
    d.class_sizes.assign(m, 0);
    for (std::size_t c = 0; c < m; ++c)
        for (int t = 0; t < n; ++t) {
            const Rational v = d.vertices.rows[c][t] * d.vertices.denominators[c];
            d.sigma[t][c] = static_cast<int>(v.get_num().get_si());
            d.class_sizes[c] += d.sigma[t][c];
        }
    int next = 0;
    d.atom_copies.assign(n, 0);
    for (int t = 0; t < n; ++t) {
        int copy = 0;
        for (std::size_t c = 0; c < m; ++c)
            for (int j = 0; j < d.sigma[t][c]; ++j) {
                d.expanded_labels.push_back(s.algebra().labels()[t] + "." + std::to_string(++copy));
                d.copy_class.push_back(static_cast<int>(c));
                if (next < 32)
                    d.atom_copies[t] |= Mask{1} << next;
                ++next;
            }
    }

    // order preserved and reflected through the count tuples
    const Mask full = s.algebra().full_mask();
    std::vector<std::vector<int>> tuples(std::size_t{full} + 1);
    for (Mask x = 0; x <= full; ++x)
        tuples[x] = d.tuple(x);
    for (Mask x = 0; x <= full; ++x)
        for (Mask y = 0; y <= full; ++y) {
            const ClassId cx = s.class_of(x);
            const ClassId cy = s.class_of(y);
            bool le = true;
            for (std::size_t c = 0; c < m && le; ++c)
                le = tuples[x][c] <= tuples[y][c];
            const bool same = tuples[x] == tuples[y];
            if (same != (cx == cy) || (le && !same) != s.lt(cx, cy))
                throw Error(ErrorCode::embedding_not_faithful, "count tuples of " + s.algebra().format(x) + " and " +
                                                                   s.algebra().format(y) +
                                                                   " do not match their order");
        }

    if (next <= Algebra::max_atoms) {
        Algebra big = Algebra::powerset(d.expanded_labels);
        std::map<std::vector<int>, ClassId> ids;
        std::vector<ClassId> cls(big.size());
        for (Mask u = 0; u <= big.full_mask(); ++u) {
            std::vector<int> counts(m, 0);
            for (int i = 0; i < next; ++i)
                if (u >> i & 1u)
                    ++counts[d.copy_class[i]];
            auto [it, fresh] = ids.emplace(std::move(counts), static_cast<ClassId>(ids.size()));
            cls[u] = it->second;
        }
        const int k = static_cast<int>(ids.size());
        std::vector<const std::vector<int>*> tup(k);
        std::vector<std::string> names(k);
        for (const auto& [t, id] : ids) {
            tup[id] = &t;
            std::string nm = "(";
            for (std::size_t c = 0; c < t.size(); ++c)
                nm += (c ? "," : "") + std::to_string(t[c]);
            names[id] = nm + ")";
        }
        Poset order(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == j)
                    continue;
                bool le = true;
                for (std::size_t c = 0; c < m && le; ++c)
                    le = (*tup[i])[c] <= (*tup[j])[c];
                if (le)
                    order.set(i, j);
            }
        d.expanded = Scaling::assemble(std::move(big), std::move(cls), std::move(order), std::move(names));
    }
    result.division = std::move(d);
    return result;
}

std::vector<std::pair<Mask, Mask>> kps_generators()
{
    // atoms a b c d e at bits 0..4
    constexpr Mask a = 1, b = 2, c = 4, d = 8, e = 16;
    return {{a | d, b | c}, {b | e, c | d}, {c, b | d}, {b | c | d, a | e}};
}

Scaling kps_example()
{
    Algebra alg = Algebra::powerset({"a", "b", "c", "d", "e"});
    const auto gens = kps_generators();
    Scaling s = closure_scaling(alg, gens);
    auto report = verify_axioms(s, 1);
    if (!report.ok())
        throw Error(ErrorCode::closure_collapse, "closure is not a scaling: " + describe(s, report.witnesses.front()));
    return s;
}

}  // namespace sba

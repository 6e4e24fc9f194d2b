#include "sba/belief.hpp"

#include "sba/catalog.hpp"
#include "sba/error.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace sba {

namespace {

// Conditional comparisons read straight off one unconditional relation.
struct CanonicalView {
    const Preorder& p;
    bool le(Mask z, Mask x, Mask y) const { return p.le(static_cast<int>(x & z), static_cast<int>(y & z)); }
};

struct ExplicitView {
    const BeliefSystem& bs;
    bool le(Mask z, Mask x, Mask y) const { return bs.given[z]->le(static_cast<int>(x), static_cast<int>(y)); }
};

struct Sink {
    BeliefReport* report = nullptr;  // null: stop at the first violation
    std::size_t cap = 0;
    bool failed = false;

    // returns true when scanning should stop
    bool add(Axiom a, Mask x, Mask y, Mask z)
    {
        failed = true;
        if (!report)
            return true;
        ++report->counts[static_cast<std::size_t>(a)];
        if (report->findings.size() < cap)
            report->findings.push_back({a, x, y, z});
        return false;
    }
};

template <class View>
void check(const View& v, Mask full, AxiomSet enabled, Sink& sink)
{
    auto lt = [&](Mask z, Mask x, Mask y) { return v.le(z, x, y) && !v.le(z, y, x); };
    for (Mask z = 1; z <= full; ++z) {
        for (Mask x = 0; x <= full; ++x)
            for (Mask y = 0; y <= full; ++y) {
                const Mask xz = x & z;
                const Mask yz = y & z;
                if (enabled.has(Axiom::increasing) && xz != yz && is_submask(xz, yz) && !lt(z, x, y))
                    if (sink.add(Axiom::increasing, x, y, z))
                        return;
                if (enabled.has(Axiom::complement) && lt(z, x, y) && !lt(z, full & ~y, full & ~x))
                    if (sink.add(Axiom::complement, x, y, z))
                        return;
                if (enabled.has(Axiom::totality) && !v.le(z, x, y) && !v.le(z, y, x))
                    if (sink.add(Axiom::totality, x, y, z))
                        return;
                if (enabled.has(Axiom::coherence) && xz == yz && !(v.le(z, x, y) && v.le(z, y, x)))
                    if (sink.add(Axiom::coherence, x, y, z))
                        return;
            }
    }
    if (!enabled.has(Axiom::sure_thing) && !enabled.has(Axiom::sure_thing_strict))
        return;
    for (Mask z = 1; z < full; ++z) {
        const Mask nz = full & ~z;
        for (Mask x = 0; x <= full; ++x)
            for (Mask y = 0; y <= full; ++y) {
                if (!v.le(z, x, y) || !v.le(nz, x, y))
                    continue;
                if (!v.le(full, x, y)) {
                    if (enabled.has(Axiom::sure_thing) && sink.add(Axiom::sure_thing, x, y, z))
                        return;
                } else if (enabled.has(Axiom::sure_thing_strict) && (lt(z, x, y) || lt(nz, x, y)) && !lt(full, x, y)) {
                    if (sink.add(Axiom::sure_thing_strict, x, y, z))
                        return;
                }
            }
    }
}

std::optional<Violation> basic_scaling_failure(const Algebra& alg, const Preorder& p)
{
    Scaling s = scaling_of_preorder(alg, p);
    auto report = verify_axioms_serial(s, 1);
    if (report.ok())
        return std::nullopt;
    return report.witnesses.front();
}

// Lexicographic successor of a rank vector whose used ranks form a prefix
// 0..r-1 (an ordered set partition). Returns false after the last one.
bool next_weak_order(std::vector<int>& rank)
{
    const int m = static_cast<int>(rank.size());
    while (true) {
        int i = m - 1;
        while (i >= 0 && rank[i] == m - 1)
            rank[i--] = 0;
        if (i < 0)
            return false;
        ++rank[i];
        std::vector<char> used(m, 0);
        for (int r : rank)
            used[r] = 1;
        int top = m - 1;
        while (top >= 0 && !used[top])
            --top;
        if (std::all_of(used.begin(), used.begin() + top + 1, [](char u) { return u != 0; }))
            return true;
    }
}

}  // namespace

Preorder::Preorder(int size) : size_(size), rel_(static_cast<std::size_t>(size) * size, 0)
{
    for (int i = 0; i < size; ++i)
        set_le(i, i);
}

Preorder Preorder::from_ranks(std::span<const int> rank)
{
    Preorder p(static_cast<int>(rank.size()));
    for (int i = 0; i < p.size_; ++i)
        for (int j = 0; j < p.size_; ++j)
            if (rank[i] <= rank[j])
                p.set_le(i, j);
    return p;
}

bool Preorder::total() const
{
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
            if (!le(i, j) && !le(j, i))
                return false;
    return true;
}

bool Preorder::transitive() const
{
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
            if (le(i, j))
                for (int l = 0; l < size_; ++l)
                    if (le(j, l) && !le(i, l))
                        return false;
    return true;
}

BeliefSystem canonical_belief_system(const Algebra& alg, const Preorder& unconditional)
{
    if (unconditional.size() != static_cast<int>(alg.size()))
        throw Error(ErrorCode::invalid_argument, "preorder does not cover the algebra");
    BeliefSystem bs{alg, std::vector<std::optional<Preorder>>(alg.size())};
    const Mask full = alg.full_mask();
    for (Mask z = 1; z <= full; ++z) {
        Preorder p(static_cast<int>(alg.size()));
        for (Mask x = 0; x <= full; ++x)
            for (Mask y = 0; y <= full; ++y)
                if (unconditional.le(static_cast<int>(x & z), static_cast<int>(y & z)))
                    p.set_le(static_cast<int>(x), static_cast<int>(y));
        bs.given[z] = std::move(p);
    }
    return bs;
}

Preorder preorder_from_measure(const Algebra& alg, std::span<const Rational> mass)
{
    if (static_cast<int>(mass.size()) != alg.atom_count())
        throw Error(ErrorCode::invalid_argument, "measure does not give one mass per atom");
    std::vector<Rational> value(alg.size(), 0);
    for (Mask x = 1; x <= alg.full_mask(); ++x)
        value[x] = value[x & (x - 1)] + mass[__builtin_ctz(x)];
    Preorder p(static_cast<int>(alg.size()));
    for (Mask x = 0; x <= alg.full_mask(); ++x)
        for (Mask y = 0; y <= alg.full_mask(); ++y)
            if (value[x] <= value[y])
                p.set_le(static_cast<int>(x), static_cast<int>(y));
    return p;
}

std::string to_string(Axiom a)
{
    switch (a) {
    case Axiom::increasing: return "increasing";
    case Axiom::complement: return "complement";
    case Axiom::sure_thing: return "sure-thing";
    case Axiom::sure_thing_strict: return "sure-thing strictness";
    case Axiom::totality: return "totality";
    case Axiom::coherence: return "coherence";
    }
    return "?";
}

bool BeliefReport::ok() const
{
    return std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 0; });
}

BeliefReport check_axioms(const BeliefSystem& bs, AxiomSet enabled, std::size_t max_findings)
{
    const Mask full = bs.algebra.full_mask();
    if (bs.given.size() != bs.algebra.size())
        throw Error(ErrorCode::invalid_argument, "belief system must list one ordering per element");
    for (Mask z = 1; z <= full; ++z)
        if (!bs.given[z] || bs.given[z]->size() != static_cast<int>(bs.algebra.size()))
            throw Error(ErrorCode::invalid_argument, "missing ordering given " + bs.algebra.format(z));
    BeliefReport report;
    Sink sink{&report, max_findings, false};
    check(ExplicitView{bs}, full, enabled, sink);
    return report;
}

std::string describe(const BeliefSystem& bs, const AxiomFinding& f)
{
    const auto& alg = bs.algebra;
    const std::string x = alg.format(f.x);
    const std::string y = alg.format(f.y);
    const std::string z = alg.format(f.z);
    const Mask full = alg.full_mask();
    switch (f.axiom) {
    case Axiom::increasing:
        return "increasing: " + x + " ^ " + z + " < " + y + " ^ " + z + " but not P(" + x + "|" + z + ") < P(" + y +
               "|" + z + ")";
    case Axiom::complement:
        return "complement: P(" + x + "|" + z + ") < P(" + y + "|" + z + ") but not P(" + alg.format(full & ~f.y) +
               "|" + z + ") < P(" + alg.format(full & ~f.x) + "|" + z + ")";
    case Axiom::sure_thing:
        return "sure-thing: " + x + " is dominated by " + y + " given " + z + " and given " +
               alg.format(full & ~f.z) + " but not unconditionally";
    case Axiom::sure_thing_strict:
        return "sure-thing strictness: " + x + " is dominated by " + y + " given " + z + " and given " +
               alg.format(full & ~f.z) + ", strictly on one side, but not strictly unconditionally";
    case Axiom::totality:
        return "totality: P(" + x + "|" + z + ") and P(" + y + "|" + z + ") are incomparable";
    case Axiom::coherence:
        return "coherence: " + x + " and " + y + " agree on " + z + " but are ranked differently";
    }
    return {};
}

Scaling scaling_of_preorder(const Algebra& alg, const Preorder& p)
{
    const int m = static_cast<int>(alg.size());
    std::vector<ClassId> cls(m, -1);
    std::vector<int> rep;
    for (int x = 0; x < m; ++x) {
        for (std::size_t c = 0; c < rep.size() && cls[x] < 0; ++c)
            if (p.equivalent(x, rep[c]))
                cls[x] = static_cast<ClassId>(c);
        if (cls[x] < 0) {
            cls[x] = static_cast<ClassId>(rep.size());
            rep.push_back(x);
        }
    }
    const int k = static_cast<int>(rep.size());
    Poset order(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (p.lt(rep[i], rep[j]))
                order.set(i, j);
    return Scaling::assemble(alg, std::move(cls), std::move(order));
}

DerivationResult derivation_counterexample_search(int n, AxiomSet enabled, bool parallel)
{
    if (n < 1 || n > 3 || (!enabled.has(Axiom::totality) && n > 2))
        throw Error(ErrorCode::unsupported_size, "search covers at most 3 atoms (2 without totality)");
    const Algebra alg = letter_algebra(n);
    const Mask full = alg.full_mask();
    const int m = static_cast<int>(alg.size());

    std::vector<Preorder> space;
    if (enabled.has(Axiom::totality)) {
        std::vector<int> rank(m, 0);
        do
            space.push_back(Preorder::from_ranks(rank));
        while (next_weak_order(rank));
    } else {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j)
                    pairs.emplace_back(i, j);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
            Preorder p(m);
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (bits >> b & 1u)
                    p.set_le(pairs[b].first, pairs[b].second);
            if (p.transitive())
                space.push_back(std::move(p));
        }
    }

    const long count = static_cast<long>(space.size());
    long passing = 0;
    long first_bad = LONG_MAX;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : passing) reduction(min : first_bad) if (parallel)
    for (long i = 0; i < count; ++i) {
        const Preorder& p = space[static_cast<std::size_t>(i)];
        Sink sink;
        check(CanonicalView{p}, full, enabled, sink);
        if (sink.failed)
            continue;
        ++passing;
        if (i < first_bad && basic_scaling_failure(alg, p))
            first_bad = i;
    }

    DerivationResult r;
    r.n = n;
    r.systems = static_cast<std::uint64_t>(count);
    r.passing = static_cast<std::uint64_t>(passing);
    if (first_bad != LONG_MAX) {
        const Preorder& p = space[static_cast<std::size_t>(first_bad)];
        const Violation v = *basic_scaling_failure(alg, p);
        r.counterexample = DerivationCounterexample{p, v, describe(scaling_of_preorder(alg, p), v)};
    }
    return r;
}

}  // namespace sba

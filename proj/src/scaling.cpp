#include "sba/scaling.hpp"

#include "sba/error.hpp"
#include "sba/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sba {

namespace {

constexpr int max_classes = 4096;

const char* const greek_names[] = {"alpha", "beta",    "gamma", "delta", "epsilon", "zeta",
                                   "eta",   "theta",   "iota",  "kappa", "lambda",  "mu",
                                   "nu",    "xi",      "omicron", "pi",  "rho",     "sigma",
                                   "tau",   "upsilon", "phi",   "chi",   "psi",     "omega"};

template <class F>
void for_each_submask(Mask m, F&& f)
{
    Mask s = m;
    while (true) {
        f(s);
        if (s == 0)
            break;
        s = (s - 1) & m;
    }
}

struct Scan {
    std::uint64_t count = 0;
    std::vector<Violation> found;
    std::size_t cap = 0;

    void add(const Violation& v)
    {
        ++count;
        if (found.size() < cap)
            found.push_back(v);
    }
};

void scan_increasing(const Scaling& s, Scan& out)
{
    const Mask full = s.algebra().full_mask();
    for (Mask y = 0; y <= full; ++y) {
        const ClassId cy = s.class_of(y);
        for_each_submask(y, [&](Mask x) {
            if (x != y && !s.lt(s.class_of(x), cy))
                out.add({Violation::Kind::not_increasing, x, y, 0, 0});
        });
    }
}

// All intervals [a,b] with this b.
void scan_top(const Scaling& s, Mask b, Scan& out)
{
    auto cls = s.classes();
    for_each_submask(b, [&](Mask a) {
        const Mask free = b & ~a;
        for_each_submask(free, [&](Mask sx) {
            const Mask x = a | sx;
            const ClassId cx = cls[x];
            const ClassId ncx = cls[relative_complement_mask(x, a, b)];
            for_each_submask(free, [&](Mask sy) {
                const Mask y = a | sy;
                const ClassId cy = cls[y];
                if (s.lt(cx, cy)) {
                    const ClassId ncy = cls[relative_complement_mask(y, a, b)];
                    if (!s.lt(ncy, ncx))
                        out.add({Violation::Kind::reversal, x, y, a, b});
                } else if (cx == cy && x < y) {
                    if (cls[relative_complement_mask(y, a, b)] != ncx)
                        out.add({Violation::Kind::equality, x, y, a, b});
                }
            });
        });
    });
}

AxiomReport finish(Scan& inc, std::vector<Scan>& tops, std::size_t cap)
{
    AxiomReport r;
    r.violation_count = inc.count;
    r.witnesses = std::move(inc.found);
    for (auto& t : tops) {
        r.violation_count += t.count;
        for (auto& v : t.found)
            if (r.witnesses.size() < cap)
                r.witnesses.push_back(v);
    }
    return r;
}

Mask deposit(Mask x, Mask z)
{
    Mask out = 0;
    int i = 0;
    for (int bit = 0; bit < 32; ++bit)
        if (z >> bit & 1u) {
            if (x >> i & 1u)
                out |= Mask{1} << bit;
            ++i;
        }
    return out;
}

Mask extract(Mask x, Mask z)
{
    Mask out = 0;
    int i = 0;
    for (int bit = 0; bit < 32; ++bit)
        if (z >> bit & 1u) {
            if (x >> bit & 1u)
                out |= Mask{1} << i;
            ++i;
        }
    return out;
}

}  // namespace

std::vector<std::string> default_class_names(int k)
{
    std::vector<std::string> names(static_cast<std::size_t>(k));
    if (k == 0)
        return names;
    const int middle = k - 2;
    names.front() = "0";
    for (int i = 1; i + 1 < k; ++i)
        names[i] = middle <= 24 ? std::string(greek_names[i - 1]) : "c" + std::to_string(i);
    if (k > 1)
        names.back() = "1";
    return names;
}

Scaling Scaling::assemble(Algebra alg, std::vector<ClassId> class_of, Poset order, std::vector<std::string> names)
{
    const int k = order.size();
    if (k > max_classes)
        throw Error(ErrorCode::unsupported_size, std::to_string(k) + " classes exceed the supported " +
                                                     std::to_string(max_classes));
    if (class_of.size() != alg.size())
        throw Error(ErrorCode::invalid_argument, "class assignment does not cover the algebra");
    std::vector<Mask> least(k, ~Mask{0});
    for (Mask x = 0; x < class_of.size(); ++x) {
        const ClassId c = class_of[x];
        if (c < 0 || c >= k)
            throw Error(ErrorCode::invalid_argument, "class id " + std::to_string(c) + " out of range");
        least[c] = std::min(least[c], x);
    }
    for (int c = 0; c < k; ++c)
        if (least[c] == ~Mask{0})
            throw Error(ErrorCode::invalid_argument, "class " + std::to_string(c) + " has no members");

    // Kahn, smallest member first among the ready classes.
    std::vector<int> indegree(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (order.lt(i, j))
                ++indegree[j];
    std::set<std::pair<Mask, int>> ready;
    for (int c = 0; c < k; ++c)
        if (indegree[c] == 0)
            ready.emplace(least[c], c);
    std::vector<int> perm(k, -1);
    int next = 0;
    while (!ready.empty()) {
        const int c = ready.begin()->second;
        ready.erase(ready.begin());
        perm[c] = next++;
        for (int j = 0; j < k; ++j)
            if (order.lt(c, j) && --indegree[j] == 0)
                ready.emplace(least[j], j);
    }
    if (next != k)
        throw Error(ErrorCode::cycle_in_order, "class order contains a cycle");

    std::vector<ClassId> renumbered(class_of.size());
    for (std::size_t x = 0; x < class_of.size(); ++x)
        renumbered[x] = perm[class_of[x]];
    std::vector<std::vector<Mask>> members(k);
    for (Mask x = 0; x < renumbered.size(); ++x)
        members[renumbered[x]].push_back(x);
    std::vector<std::string> ordered_names;
    if (names.empty()) {
        ordered_names = default_class_names(k);
    } else {
        if (static_cast<int>(names.size()) != k)
            throw Error(ErrorCode::invalid_argument, "class name count does not match class count");
        ordered_names.resize(k);
        for (int c = 0; c < k; ++c)
            ordered_names[perm[c]] = std::move(names[c]);
    }
    auto impl = std::make_shared<const Impl>(Impl{std::move(alg), std::move(renumbered), order.relabeled(perm),
                                                  std::move(members), std::move(ordered_names)});
    return Scaling(std::move(impl));
}

ClassId Scaling::class_of(const Element& x) const
{
    if (!algebra().owns(x))
        throw Error(ErrorCode::mixed_algebra, "element belongs to a different algebra");
    return class_of(x.bits);
}

std::optional<ClassId> Scaling::find_class(std::string_view name) const
{
    for (int c = 0; c < class_count(); ++c)
        if (impl_->names[c] == name)
            return c;
    return std::nullopt;
}

std::string describe(const Scaling& s, const Violation& v)
{
    const auto& alg = s.algebra();
    auto nm = [&](Mask m) { return alg.format(m) + " (" + s.name(s.class_of(m)) + ")"; };
    switch (v.kind) {
    case Violation::Kind::not_increasing:
        return "not increasing: " + nm(v.x) + " < " + nm(v.y) + " but the classes are not strictly ordered";
    case Violation::Kind::reversal: {
        const Mask cx = relative_complement_mask(v.x, v.a, v.b);
        const Mask cy = relative_complement_mask(v.y, v.a, v.b);
        return "complement in [" + alg.format(v.a) + "," + alg.format(v.b) + "]: " + nm(v.x) + " < " + nm(v.y) +
               " but not " + nm(cy) + " < " + nm(cx);
    }
    case Violation::Kind::equality: {
        const Mask cx = relative_complement_mask(v.x, v.a, v.b);
        const Mask cy = relative_complement_mask(v.y, v.a, v.b);
        return "complement in [" + alg.format(v.a) + "," + alg.format(v.b) + "]: " + nm(v.x) + " = " + nm(v.y) +
               " but " + nm(cx) + " != " + nm(cy);
    }
    }
    return {};
}

AxiomReport verify_axioms_serial(const Scaling& s, std::size_t max_witnesses)
{
    Scan inc{0, {}, max_witnesses};
    scan_increasing(s, inc);
    const Mask full = s.algebra().full_mask();
    std::vector<Scan> tops(std::size_t{full} + 1, Scan{0, {}, max_witnesses});
    for (Mask b = 0; b <= full; ++b)
        scan_top(s, b, tops[b]);
    return finish(inc, tops, max_witnesses);
}

AxiomReport verify_axioms(const Scaling& s, std::size_t max_witnesses)
{
    Scan inc{0, {}, max_witnesses};
    scan_increasing(s, inc);
    const Mask full = s.algebra().full_mask();
    const long count = static_cast<long>(full) + 1;
    std::vector<Scan> tops(static_cast<std::size_t>(count), Scan{0, {}, max_witnesses});
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = count - 1; b >= 0; --b)
        scan_top(s, static_cast<Mask>(b), tops[static_cast<std::size_t>(b)]);
    return finish(inc, tops, max_witnesses);
}

Scaling build_scaling(const Algebra& alg, std::span<const ClassId> class_assignment,
                      std::span<const std::pair<ClassId, ClassId>> strict_order, std::vector<std::string> names)
{
    if (class_assignment.size() != alg.size())
        throw Error(ErrorCode::invalid_argument, "class assignment must list one class per element");
    int k = 0;
    for (ClassId c : class_assignment) {
        if (c < 0)
            throw Error(ErrorCode::invalid_argument, "negative class id");
        k = std::max(k, c + 1);
    }
    Poset order(k);
    for (auto [lo, hi] : strict_order) {
        if (lo < 0 || hi < 0 || lo >= k || hi >= k)
            throw Error(ErrorCode::invalid_argument, "order mentions an unknown class");
        order.set(lo, hi);
    }
    order.close();
    if (order.reflexive_point() >= 0)
        throw Error(ErrorCode::cycle_in_order, "class order contains a cycle");
    Scaling s = Scaling::assemble(alg, {class_assignment.begin(), class_assignment.end()}, std::move(order),
                                  std::move(names));
    auto report = verify_axioms(s, 1);
    if (!report.ok()) {
        const auto& v = report.witnesses.front();
        throw Error(v.kind == Violation::Kind::not_increasing ? ErrorCode::axiom_a_violation
                                                              : ErrorCode::axiom_b_violation,
                    describe(s, v));
    }
    return s;
}

Scaling identity_scaling(const Algebra& alg)
{
    const Mask full = alg.full_mask();
    if (alg.size() > max_classes)
        throw Error(ErrorCode::unsupported_size, "identity scaling needs one class per element");
    std::vector<ClassId> cls(alg.size());
    Poset order(static_cast<int>(alg.size()));
    for (Mask y = 0; y <= full; ++y) {
        cls[y] = static_cast<ClassId>(y);
        for_each_submask(y, [&](Mask x) {
            if (x != y)
                order.set(static_cast<int>(x), static_cast<int>(y));
        });
    }
    return Scaling::assemble(alg, std::move(cls), std::move(order));
}

Scaling scaling_from_measures(const Algebra& alg, std::span<const std::vector<Rational>> given)
{
    std::vector<std::vector<Rational>> measures(given.begin(), given.end());
    for (auto& m : measures)
        for (auto& q : m)
            q.canonicalize();
    if (measures.empty())
        throw Error(ErrorCode::empty_measure_list, "at least one measure is required");
    const int n = alg.atom_count();
    for (const auto& m : measures) {
        if (static_cast<int>(m.size()) != n)
            throw Error(ErrorCode::invalid_argument, "measure does not give one mass per atom");
        for (const auto& q : m)
            if (sgn(q) <= 0)
                throw Error(ErrorCode::nonpositive_mass, "mass " + to_string(q) + " is not positive");
    }
    const Mask full = alg.full_mask();
    std::vector<std::vector<Rational>> value(alg.size(), std::vector<Rational>(measures.size()));
    for (std::size_t j = 0; j < measures.size(); ++j)
        for (Mask x = 1; x <= full; ++x) {
            const int low = __builtin_ctz(x);
            value[x][j] = value[x & (x - 1)][j] + measures[j][low];
        }
    std::map<std::vector<Rational>, ClassId> ids;
    std::vector<ClassId> cls(alg.size());
    for (Mask x = 0; x <= full; ++x) {
        auto [it, fresh] = ids.emplace(value[x], static_cast<ClassId>(ids.size()));
        cls[x] = it->second;
    }
    std::vector<const std::vector<Rational>*> rep(ids.size());
    for (const auto& [v, c] : ids)
        rep[c] = &v;
    const int k = static_cast<int>(ids.size());
    Poset order(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            bool weak = i != j;
            bool strict = false;
            for (std::size_t m = 0; m < measures.size() && weak; ++m) {
                weak = (*rep[i])[m] <= (*rep[j])[m];
                strict = strict || (*rep[i])[m] < (*rep[j])[m];
            }
            if (weak && strict)
                order.set(i, j);
        }
    return Scaling::assemble(alg, std::move(cls), std::move(order));
}

Scaling closure_scaling(const Algebra& alg, std::span<const std::pair<Mask, Mask>> generators)
{
    const Mask full = alg.full_mask();
    if (alg.size() > max_classes)
        throw Error(ErrorCode::unsupported_size, "closure needs one class per element");
    const int k = static_cast<int>(alg.size());
    Poset rel(k);
    for (Mask y = 0; y <= full; ++y)
        for_each_submask(y, [&](Mask x) {
            if (x != y)
                rel.set(static_cast<int>(x), static_cast<int>(y));
        });
    for (auto [x, y] : generators) {
        if (x > full || y > full)
            throw Error(ErrorCode::invalid_argument, "generator outside the algebra");
        rel.set(static_cast<int>(x), static_cast<int>(y));
    }
    auto collapse = [&] {
        const int p = rel.reflexive_point();
        if (p >= 0)
            throw Error(ErrorCode::closure_collapse,
                        "closure forces " + alg.format(static_cast<Mask>(p)) + " below itself");
    };
    std::size_t before = 0;
    while (true) {
        rel.close();
        collapse();
        // complement reversal on every interval
        for (Mask b = 0; b <= full; ++b)
            for_each_submask(b, [&](Mask a) {
                const Mask free = b & ~a;
                for_each_submask(free, [&](Mask sx) {
                    const Mask x = a | sx;
                    for_each_submask(free, [&](Mask sy) {
                        const Mask y = a | sy;
                        if (rel.lt(static_cast<int>(x), static_cast<int>(y)))
                            rel.set(static_cast<int>(relative_complement_mask(y, a, b)),
                                    static_cast<int>(relative_complement_mask(x, a, b)));
                    });
                });
            });
        // adding a common disjoint part keeps a strict inequality
        for (Mask x = 0; x <= full; ++x)
            for (Mask y = 0; y <= full; ++y) {
                if (!rel.lt(static_cast<int>(x), static_cast<int>(y)))
                    continue;
                for_each_submask(full & ~y, [&](Mask z) {
                    rel.set(static_cast<int>(x | z), static_cast<int>(y | z));
                });
            }
        collapse();
        const std::size_t now = rel.relation_count();
        if (now == before)
            break;
        before = now;
    }
    std::vector<ClassId> cls(alg.size());
    for (Mask x = 0; x <= full; ++x)
        cls[x] = static_cast<ClassId>(x);
    return Scaling::assemble(alg, std::move(cls), std::move(rel));
}

Mask Restriction::compress(Mask x) const
{
    if (!is_submask(x, top))
        throw Error(ErrorCode::outside_interval, "element is not below the conditioning element");
    return extract(x, top);
}

Mask Restriction::expand(Mask x) const { return deposit(x, top); }

Restriction restrict_to(const Scaling& s, Mask z)
{
    if (z == 0)
        throw Error(ErrorCode::condition_on_zero, "cannot restrict to the zero element");
    if (z > s.algebra().full_mask())
        throw Error(ErrorCode::invalid_argument, "conditioning element outside the algebra");
    std::vector<std::string> labels;
    for (int i = 0; i < s.algebra().atom_count(); ++i)
        if (z >> i & 1u)
            labels.push_back(s.algebra().labels()[i]);
    Algebra sub = Algebra::powerset(std::move(labels));
    std::map<ClassId, ClassId> renumber;
    std::vector<ClassId> cls(sub.size());
    for (Mask x = 0; x <= sub.full_mask(); ++x) {
        const ClassId parent = s.class_of(deposit(x, z));
        auto [it, fresh] = renumber.emplace(parent, static_cast<ClassId>(renumber.size()));
        cls[x] = it->second;
    }
    const int k = static_cast<int>(renumber.size());
    Poset order(k);
    std::vector<std::string> names(k);
    for (auto [pi, i] : renumber) {
        names[i] = s.name(pi);
        for (auto [pj, j] : renumber)
            if (s.lt(pi, pj))
                order.set(i, j);
    }
    return Restriction{Scaling::assemble(std::move(sub), std::move(cls), std::move(order), std::move(names)), z};
}

}  // namespace sba

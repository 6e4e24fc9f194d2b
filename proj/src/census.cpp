#include "sba/census.hpp"

#include "sba/catalog.hpp"
#include "sba/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sba {

namespace {

struct Code {
    std::vector<int> label;                 // per mask
    std::vector<std::pair<int, int>> order; // sorted

    friend auto operator<=>(const Code&, const Code&) = default;
};

Mask permute(Mask x, const std::vector<int>& perm)
{
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (x >> i & 1u)
            out |= Mask{1} << perm[i];
    return out;
}

// Encoding of s after moving atom i to perm[i]; also returns the class
// renumbering used.
Code encode(const Scaling& s, const std::vector<int>& perm)
{
    const std::size_t size = s.algebra().size();
    std::vector<ClassId> cls(size);
    for (Mask x = 0; x < size; ++x)
        cls[permute(x, perm)] = s.class_of(x);
    std::vector<int> relabel(s.class_count(), -1);
    Code c;
    c.label.resize(size);
    int next = 0;
    for (Mask y = 0; y < size; ++y) {
        int& r = relabel[cls[y]];
        if (r < 0)
            r = next++;
        c.label[y] = r;
    }
    for (int i = 0; i < s.class_count(); ++i)
        for (int j = 0; j < s.class_count(); ++j)
            if (s.lt(i, j))
                c.order.emplace_back(relabel[i], relabel[j]);
    std::sort(c.order.begin(), c.order.end());
    return c;
}

std::pair<Code, std::vector<int>> canonical(const Scaling& s)
{
    std::vector<int> perm(s.algebra().atom_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::pair<Code, std::vector<int>> best{encode(s, perm), perm};
    while (std::next_permutation(perm.begin(), perm.end())) {
        Code c = encode(s, perm);
        if (c < best.first)
            best = {std::move(c), perm};
    }
    return best;
}

std::string to_text(const Code& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.label.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.label[i]);
    out += "|";
    for (std::size_t i = 0; i < c.order.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.order[i].first) + "<" + std::to_string(c.order[i].second);
    return out;
}

Scaling from_code(const Algebra& alg, const Code& c)
{
    int k = 0;
    for (int l : c.label)
        k = std::max(k, l + 1);
    Poset order(k);
    for (auto [i, j] : c.order)
        order.set(i, j);
    return Scaling::assemble(alg, c.label, std::move(order));
}

struct Found {
    Code code;
    bool one_to_one;
    bool linear;
};

// Set partitions of the middle elements into inclusion antichains.
void partitions(const std::vector<Mask>& middle, std::size_t i, std::vector<int>& block,
                std::vector<std::vector<Mask>>& blocks, std::vector<std::vector<int>>& out)
{
    if (i == middle.size()) {
        out.push_back(block);
        return;
    }
    const Mask x = middle[i];
    for (std::size_t b = 0; b <= blocks.size(); ++b) {
        if (b < blocks.size()) {
            bool antichain = std::none_of(blocks[b].begin(), blocks[b].end(),
                                          [&](Mask y) { return is_submask(x, y) || is_submask(y, x); });
            if (!antichain)
                continue;
        }
        if (b == blocks.size())
            blocks.emplace_back();
        blocks[b].push_back(x);
        block[i] = static_cast<int>(b);
        partitions(middle, i + 1, block, blocks, out);
        blocks[b].pop_back();
        if (blocks[b].empty())
            blocks.pop_back();
    }
}

bool transitive_closed(const Poset& p)
{
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            if (i == j || !p.lt(i, j))
                continue;
            for (int l = 0; l < p.size(); ++l)
                if (p.lt(j, l) && !p.lt(i, l))
                    return false;
        }
    return true;
}

// All verified scalings with one fixed class partition.
void scan_partition(const Algebra& alg, const std::vector<Mask>& middle, const std::vector<int>& block,
                    const CensusFilter& filter, std::vector<Found>& out)
{
    const Mask full = alg.full_mask();
    const int mid_blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    const int k = mid_blocks + 2;
    const bool one_to_one = k == static_cast<int>(alg.size());
    if (filter.one_to_one && !one_to_one)
        return;
    std::vector<ClassId> cls(alg.size());
    cls[0] = 0;
    cls[full] = k - 1;
    for (std::size_t i = 0; i < middle.size(); ++i)
        cls[middle[i]] = block[i] + 1;

    Poset forced(k);
    for (Mask y = 0; y <= full; ++y)
        for (Mask x = 0; x <= full; ++x)
            if (x != y && is_submask(x, y))
                forced.set(cls[x], cls[y]);
    forced.close();
    if (forced.reflexive_point() >= 0)
        return;
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!forced.comparable(i, j))
                free.emplace_back(i, j);
    std::vector<int> choice(free.size(), 0);
    while (true) {
        Poset p = forced;
        for (std::size_t f = 0; f < free.size(); ++f) {
            if (choice[f] == 1)
                p.set(free[f].first, free[f].second);
            else if (choice[f] == 2)
                p.set(free[f].second, free[f].first);
        }
        const bool acceptable = transitive_closed(p) && p.reflexive_point() < 0 &&
                                (!filter.linear_only || p.is_linear());
        if (acceptable) {
            Scaling s = Scaling::assemble(alg, cls, p);
            if (verify_axioms_serial(s, 0).ok())
                out.push_back({canonical(s).first, one_to_one, s.linear()});
        }
        std::size_t f = 0;
        while (f < choice.size() && choice[f] == 2)
            choice[f++] = 0;
        if (f == choice.size())
            break;
        ++choice[f];
    }
}

// Linear one-to-one scalings: the lower half of the chain is an order ideal
// containing one element of each complementary pair; the upper half mirrors it.
void linear_halves(const Algebra& alg, std::vector<Mask>& chain, std::vector<char>& placed,
                   std::vector<std::vector<Mask>>& out)
{
    const Mask full = alg.full_mask();
    const std::size_t half = alg.size() / 2 - 1;  // zero sits below the chain
    if (chain.size() == half) {
        out.push_back(chain);
        return;
    }
    for (Mask x = 1; x < full; ++x) {
        if (placed[x] || placed[full & ~x])
            continue;
        bool ready = true;
        for (Mask y = (x - 1) & x;; y = (y - 1) & x) {
            if (!placed[y]) {
                ready = false;
                break;
            }
            if (y == 0)
                break;
        }
        if (!ready)
            continue;
        placed[x] = 1;
        chain.push_back(x);
        linear_halves(alg, chain, placed, out);
        chain.pop_back();
        placed[x] = 0;
    }
}

void scan_half(const Algebra& alg, const std::vector<Mask>& half, std::vector<Found>& out)
{
    const Mask full = alg.full_mask();
    const int size = static_cast<int>(alg.size());
    std::vector<ClassId> cls(alg.size());
    cls[0] = 0;
    cls[full] = size - 1;
    for (std::size_t p = 0; p < half.size(); ++p) {
        cls[half[p]] = static_cast<ClassId>(p + 1);
        cls[full & ~half[p]] = static_cast<ClassId>(size - 2 - p);
    }
    Poset chain(size);
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            chain.set(i, j);
    Scaling s = Scaling::assemble(alg, std::move(cls), std::move(chain));
    if (verify_axioms_serial(s, 0).ok())
        out.push_back({canonical(s).first, true, true});
}

}  // namespace

std::string canonical_encoding(const Scaling& s) { return to_text(canonical(s).first); }

bool isomorphic(const Scaling& a, const Scaling& b)
{
    return a.algebra().atom_count() == b.algebra().atom_count() && canonical(a).first == canonical(b).first;
}

CensusResult enumerate_scalings(int n, CensusFilter filter, bool parallel)
{
    if (n < 2 || n > 4)
        throw Error(ErrorCode::unsupported_size, "census covers 2 to 4 atoms");
    if (n == 4 && !(filter.one_to_one && filter.linear_only))
        throw Error(ErrorCode::unsupported_size, "four atoms are only enumerated for one-to-one linear scalings");
    const Algebra alg = letter_algebra(n);
    const Mask full = alg.full_mask();

    std::vector<std::vector<Found>> per_task;
    if (n == 4) {
        std::vector<std::vector<Mask>> halves;
        std::vector<Mask> chain;
        std::vector<char> placed(alg.size(), 0);
        placed[0] = 1;
        linear_halves(alg, chain, placed, halves);
        per_task.resize(halves.size());
        const long count = static_cast<long>(halves.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
        for (long i = 0; i < count; ++i)
            scan_half(alg, halves[static_cast<std::size_t>(i)], per_task[static_cast<std::size_t>(i)]);
    } else {
        std::vector<Mask> middle;
        for (Mask x = 1; x < full; ++x)
            middle.push_back(x);
        std::vector<std::vector<int>> blocks_list;
        std::vector<int> block(middle.size(), 0);
        std::vector<std::vector<Mask>> blocks;
        partitions(middle, 0, block, blocks, blocks_list);
        per_task.resize(blocks_list.size());
        const long count = static_cast<long>(blocks_list.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (long i = 0; i < count; ++i)
            scan_partition(alg, middle, blocks_list[static_cast<std::size_t>(i)], filter,
                           per_task[static_cast<std::size_t>(i)]);
    }

    CensusResult r;
    r.n = n;
    std::map<Code, const Found*> distinct;
    auto bump = [](CensusCounts& c, bool one_to_one, bool linear) {
        (one_to_one ? c.one_to_one_total : c.many_to_one_total)++;
        if (linear)
            (one_to_one ? c.one_to_one_linear : c.many_to_one_linear)++;
    };
    for (const auto& task : per_task)
        for (const auto& f : task) {
            if (filter.linear_only && !f.linear)
                continue;
            bump(r.labeled, f.one_to_one, f.linear);
            distinct.emplace(f.code, &f);
        }
    for (const auto& [code, f] : distinct) {
        bump(r.counts, f->one_to_one, f->linear);
        r.representatives.push_back({from_code(alg, code), to_text(code), f->one_to_one, f->linear});
    }
    std::sort(r.representatives.begin(), r.representatives.end(),
              [](const CensusEntry& a, const CensusEntry& b) { return a.encoding < b.encoding; });
    return r;
}

}  // namespace sba

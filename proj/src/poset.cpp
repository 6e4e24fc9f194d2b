#include "sba/poset.hpp"

#include <bit>

namespace sba {

Poset::Poset(int k) : k_(k), words_((k + 63) / 64), rows_(static_cast<std::size_t>(k) * ((k + 63) / 64), 0) {}

void Poset::close()
{
    // Warshall: whenever i < m, everything above m is above i.
    for (int m = 0; m < k_; ++m) {
        const std::uint64_t* above_m = rows_.data() + index(m);
        for (int i = 0; i < k_; ++i) {
            if (!lt(i, m))
                continue;
            std::uint64_t* r = rows_.data() + index(i);
            for (int w = 0; w < words_; ++w)
                r[w] |= above_m[w];
        }
    }
}

int Poset::reflexive_point() const
{
    for (int i = 0; i < k_; ++i)
        if (lt(i, i))
            return i;
    return -1;
}

bool Poset::is_strict_order() const
{
    if (reflexive_point() >= 0)
        return false;
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) {
            if (!lt(i, j))
                continue;
            for (int l = 0; l < k_; ++l)
                if (lt(j, l) && !lt(i, l))
                    return false;
        }
    return true;
}

bool Poset::is_linear() const
{
    for (int i = 0; i < k_; ++i)
        for (int j = i + 1; j < k_; ++j)
            if (!lt(i, j) && !lt(j, i))
                return false;
    return true;
}

std::size_t Poset::relation_count() const
{
    std::size_t n = 0;
    for (auto w : rows_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<std::pair<int, int>> Poset::covers() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) {
            if (!lt(i, j))
                continue;
            bool cover = true;
            for (int m = 0; m < k_ && cover; ++m)
                if (lt(i, m) && lt(m, j))
                    cover = false;
            if (cover)
                out.emplace_back(i, j);
        }
    return out;
}

Poset Poset::relabeled(std::span<const int> perm) const
{
    Poset out(k_);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j)
            if (lt(i, j))
                out.set(perm[i], perm[j]);
    return out;
}

}  // namespace sba

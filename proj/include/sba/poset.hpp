#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sba {

/// Strict order relation on points 0..k-1, stored as bitset rows so that
/// closure and row unions stay cheap.
class Poset {
public:
    Poset() = default;
    explicit Poset(int k);

    int size() const { return k_; }

    bool lt(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    bool le(int i, int j) const { return i == j || lt(i, j); }
    bool comparable(int i, int j) const { return le(i, j) || lt(j, i); }

    void set(int i, int j) { rows_[index(i) + (j >> 6)] |= std::uint64_t{1} << (j & 63); }

    /// Transitive closure in place.
    void close();

    /// First i with i < i, or -1.
    int reflexive_point() const;
    bool is_strict_order() const;
    bool is_linear() const;
    std::size_t relation_count() const;

    /// Cover pairs (i,j): i < j with nothing strictly between.
    std::vector<std::pair<int, int>> covers() const;

    /// Relabels point i as perm[i].
    Poset relabeled(std::span<const int> perm) const;

    /// Bitset of points above i (one bit per point).
    std::span<const std::uint64_t> row(int i) const { return {rows_.data() + index(i), static_cast<std::size_t>(words_)}; }

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    std::size_t index(int i) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(words_); }

    int k_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rows_;
};

}  // namespace sba

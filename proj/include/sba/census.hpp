#pragma once

#include "sba/scaling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sba {

struct CensusFilter {
    bool one_to_one = false;
    bool linear_only = false;
};

struct CensusEntry {
    Scaling scaling;        // canonical representative
    std::string encoding;   // canonical encoding, the sort key
    bool one_to_one = false;
    bool linear = false;
};

struct CensusCounts {
    std::uint64_t one_to_one_total = 0;
    std::uint64_t one_to_one_linear = 0;
    std::uint64_t many_to_one_total = 0;
    std::uint64_t many_to_one_linear = 0;

    std::uint64_t total() const { return one_to_one_total + many_to_one_total; }
};

struct CensusResult {
    int n = 0;
    CensusCounts counts;    // up to atom permutation and relabeling of classes
    CensusCounts labeled;   // relabeling of classes only
    std::vector<CensusEntry> representatives;
};

/// Scalings on P(n) up to isomorphism. n ∈ {2,3}; n = 4 only with both
/// one_to_one and linear_only. Throws unsupported_size otherwise.
CensusResult enumerate_scalings(int n, CensusFilter filter = {}, bool parallel = true);

/// Minimum over atom permutations of (class labels by first appearance,
/// sorted order pairs).
std::string canonical_encoding(const Scaling& s);

bool isomorphic(const Scaling& a, const Scaling& b);

}  // namespace sba

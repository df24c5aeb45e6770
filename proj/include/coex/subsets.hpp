#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace coex {

/// Subsets of a fixed, ordered ground set S are bitmasks over the element
/// indices 0..|S|-1. All reports print them as sorted index lists.
using SubsetKey = std::uint32_t;

constexpr int kMaxGroundBits = 31;

inline int subset_size(SubsetKey x) { return std::popcount(x); }

inline bool subset_of(SubsetKey x, SubsetKey a) { return (x & ~a) == 0; }

inline SubsetKey full_mask(int n) {
    return n == 0 ? 0u : (SubsetKey{1} << n) - 1u;
}

/// Calls f(z) for every z with z subset of mask, in increasing numeric order.
template <typename F>
void for_each_submask(SubsetKey mask, F&& f) {
    SubsetKey z = 0;
    while (true) {
        f(z);
        if (z == mask) break;
        z = (z - mask) & mask;
    }
}

inline std::vector<SubsetKey> submasks_of(SubsetKey mask) {
    std::vector<SubsetKey> out;
    out.reserve(std::size_t{1} << subset_size(mask));
    for_each_submask(mask, [&](SubsetKey z) { out.push_back(z); });
    return out;
}

inline std::vector<int> subset_indices(SubsetKey x) {
    std::vector<int> idx;
    for (int i = 0; x != 0; ++i, x >>= 1)
        if (x & 1u) idx.push_back(i);
    return idx;
}

}  // namespace coex

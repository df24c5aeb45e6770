#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "coex/observables.hpp"
#include "coex/witness.hpp"

namespace coex {

/**
 * Independent brute-force ground truth on finite integer carriers:
 * coexistence by decomposition-of-unit enumeration and witness existence by
 * exhaustive table search. The two verdicts must agree on every S; that
 * agreement is the desk-scale validation of the witness-mapping theorem.
 */

struct OracleConfig {
    int max_parts = 8;    // cap on decomposition length
    int max_ground = 3;   // cap on |S|
    std::chrono::milliseconds time_budget{0};  // 0: unlimited

    void validate() const;
};

/// All multisets of nonzero effects summing to u, parts in nondecreasing
/// lexicographic order (so each multiset appears exactly once).
std::vector<std::vector<Effect>> enumerate_decompositions(const AlgebraRef& algebra,
                                                          int max_parts);

struct CoexistenceVerdict {
    bool coexistent = false;
    /// witnessing decomposition and, per element of S, the part indices
    /// whose sub-multiset sums to it
    std::vector<Effect> decomposition;
    std::vector<std::vector<int>> subsum_parts;
};

/// True iff some enumerated decomposition has every s in S as a sub-multiset
/// sum. The returned datum is exactly a simple observable on 2^{parts}
/// whose range contains S.
CoexistenceVerdict coexistent_bruteforce(const AlgebraRef& algebra,
                                         const std::vector<Effect>& S,
                                         const OracleConfig& cfg);

struct WitnessSearchResult {
    bool exists = false;
    std::optional<BetaTable> witness;
    std::uint64_t assignments_tried = 0;
    std::uint64_t pruned = 0;
    std::uint64_t search_space = 0;  // |E|^(2^|S| - |S| - 1), saturating
};

/// Depth-first search over all assignments of algebra elements to the free
/// table slots (empty set and singletons are forced by A1/A2), with early
/// A3 pruning on fully-determined pairs. Disabling pruning is supported for
/// completeness spot-checks.
WitnessSearchResult witness_bruteforce(const AlgebraRef& algebra,
                                       const std::vector<Effect>& S,
                                       const OracleConfig& cfg,
                                       bool enable_pruning = true);

struct HarnessEntry {
    std::vector<int> element_indices;  // S as indices into enumerate_effects
    bool witness_exists = false;
    bool coexistent = false;
    bool certified = false;  // certify_coexistent succeeded on the found witness
    std::optional<BetaTable> witness;
    std::vector<Effect> decomposition;  // first covering decomposition, if any
    std::uint64_t search_space = 0;
    std::uint64_t pruned = 0;
};

struct HarnessReport {
    bool all_agree = false;
    bool truncated = false;  // time budget expired; entries are partial
    std::size_t sets_checked = 0;
    std::size_t coexistent_count = 0;
    std::vector<HarnessEntry> entries;
    std::vector<std::size_t> disagreements;  // indices into entries
};

/// For every S within the ground cap: asserts that the witness-search and
/// decomposition-enumeration verdicts coincide; every witness found is also
/// run through certify_coexistent end-to-end.
HarnessReport theoremmain_harness(const AlgebraRef& algebra, const OracleConfig& cfg,
                                  bool run_certify = true);

}  // namespace coex

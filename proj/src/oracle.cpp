#include "coex/oracle.hpp"

#include <algorithm>
#include <map>

namespace coex {

void OracleConfig::validate() const {
    if (max_parts < 1) throw Error("max_parts must be positive");
    if (max_ground < 0) throw Error("max_ground must be nonnegative");
}

namespace {

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget) {
        if (budget.count() > 0) expiry_ = std::chrono::steady_clock::now() + budget;
    }

    bool expired() const {
        return expiry_ && std::chrono::steady_clock::now() > *expiry_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> expiry_;
};

void decomposition_dfs(const AlgebraRef& algebra, const std::vector<Effect>& nonzero,
                       std::size_t start, const GroupElement& remaining,
                       std::vector<int>& current, int max_parts, const Deadline& deadline,
                       std::vector<std::vector<Effect>>& out) {
    if (deadline.expired()) throw SizeExceeded("time budget exceeded");
    const Group& g = algebra->group();
    if (is_zero(g, remaining)) {
        std::vector<Effect> parts;
        parts.reserve(current.size());
        for (int i : current) parts.push_back(nonzero[static_cast<std::size_t>(i)]);
        out.push_back(std::move(parts));
        return;
    }
    if (static_cast<int>(current.size()) >= max_parts) return;
    for (std::size_t i = start; i < nonzero.size(); ++i) {
        // each later part is positive, so a usable part is <= the remainder
        if (!leq(g, nonzero[i].value(), remaining)) continue;
        current.push_back(static_cast<int>(i));
        decomposition_dfs(algebra, nonzero, i, subtract(remaining, nonzero[i].value()),
                          current, max_parts, deadline, out);
        current.pop_back();
    }
}

}  // namespace

namespace {

std::vector<std::vector<Effect>> enumerate_decompositions_impl(const AlgebraRef& algebra,
                                                               int max_parts,
                                                               const Deadline& deadline) {
    if (max_parts < 1) throw Error("max_parts must be positive");
    const auto elems = enumerate_effects(algebra);
    std::vector<Effect> nonzero;
    for (const auto& e : elems)
        if (!is_zero(algebra->group(), e.value())) nonzero.push_back(e);
    std::vector<std::vector<Effect>> out;
    std::vector<int> current;
    decomposition_dfs(algebra, nonzero, 0, algebra->unit(), current, max_parts, deadline, out);
    return out;
}

}  // namespace

std::vector<std::vector<Effect>> enumerate_decompositions(const AlgebraRef& algebra,
                                                          int max_parts) {
    return enumerate_decompositions_impl(algebra, max_parts,
                                         Deadline(std::chrono::milliseconds{0}));
}

namespace {

/// Every achievable sub-multiset sum of the parts, with one witnessing
/// part-index list per value. Sub-multisets are iterated with bounded
/// multiplicity counters over the distinct part values, so repeated parts
/// are never enumerated twice.
std::map<std::vector<Int>, std::vector<int>> subsums_of(const AlgebraRef& algebra,
                                                        const std::vector<Effect>& parts) {
    // parts arrive sorted; group equal values into (first index, multiplicity)
    std::vector<std::pair<std::size_t, int>> groups;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!groups.empty() &&
            effect_equal(parts[groups.back().first], parts[i]))
            ++groups.back().second;
        else
            groups.push_back({i, 1});
    }
    std::uint64_t combinations = 1;
    for (const auto& g : groups) {
        combinations *= static_cast<std::uint64_t>(g.second) + 1;
        if (combinations > (std::uint64_t{1} << 22))
            throw SizeExceeded("too many sub-multisets to enumerate");
    }
    std::map<std::vector<Int>, std::vector<int>> achievable;
    std::vector<int> counter(groups.size(), 0);
    while (true) {
        GroupElement acc = zero_element(algebra->group());
        std::vector<int> used;
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            for (int k = 0; k < counter[gi]; ++k) {
                acc = add(acc, parts[groups[gi].first + k].value());
                used.push_back(static_cast<int>(groups[gi].first) + k);
            }
        achievable.emplace(std::get<IntVector>(acc).entries, std::move(used));
        std::size_t gi = 0;
        while (gi < groups.size() && counter[gi] == groups[gi].second) counter[gi++] = 0;
        if (gi == groups.size()) break;
        ++counter[gi];
    }
    return achievable;
}

}  // namespace

CoexistenceVerdict coexistent_bruteforce(const AlgebraRef& algebra,
                                         const std::vector<Effect>& S,
                                         const OracleConfig& cfg) {
    cfg.validate();
    if (!algebra->group().is_integer())
        throw UnsupportedCarrier("brute-force oracle needs a finite integer carrier");
    if (static_cast<int>(S.size()) > cfg.max_ground)
        throw SizeExceeded("|S| exceeds the oracle ground cap");
    const Deadline deadline(cfg.time_budget);
    for (const auto& decomposition : enumerate_decompositions(algebra, cfg.max_parts)) {
        if (deadline.expired()) throw SizeExceeded("time budget exceeded");
        const auto achievable = subsums_of(algebra, decomposition);
        CoexistenceVerdict verdict;
        verdict.decomposition = decomposition;
        bool all_found = true;
        for (const auto& s : S) {
            const auto it = achievable.find(std::get<IntVector>(s.value()).entries);
            if (it == achievable.end()) {
                all_found = false;
                break;
            }
            verdict.subsum_parts.push_back(it->second);
        }
        if (all_found) {
            verdict.coexistent = true;
            return verdict;
        }
    }
    return {};
}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

struct WitnessSearch {
    const AlgebraRef& algebra;
    const std::vector<Effect>& elems;
    std::vector<SubsetKey> slots;  // masks with >= 2 bits, by (popcount, value)
    std::vector<std::optional<Effect>> table;
    GroundSet ground;
    bool pruning;
    Deadline deadline;
    WitnessSearchResult result;

    // D(X, A) over the partially assigned table; all Z <= A are assigned
    // by the time slot A is being tried.
    GroupElement partial_d(SubsetKey x, SubsetKey a) const {
        const Group& g = algebra->group();
        GroupElement acc = zero_element(g);
        for_each_submask(a & ~x, [&](SubsetKey extra) {
            const GroupElement& term = table[x | extra]->value();
            acc = (subset_size(extra) % 2 == 0) ? add(acc, term) : subtract(acc, term);
        });
        return acc;
    }

    bool a3_holds_at(SubsetKey a) {
        const Group& g = algebra->group();
        // pairs ordered by increasing |A \ X|: the cheap, tightly binding
        // co-atom checks run first
        std::vector<SubsetKey> xs = submasks_of(a);
        std::sort(xs.begin(), xs.end(), [](SubsetKey l, SubsetKey r) {
            return subset_size(l) > subset_size(r);
        });
        for (SubsetKey x : xs)
            if (!is_positive(g, partial_d(x, a))) return false;
        return true;
    }

    bool dfs(std::size_t slot_index) {
        if (deadline.expired()) throw SizeExceeded("time budget exceeded");
        if (slot_index == slots.size()) {
            if (!pruning) {
                std::vector<Effect> values;
                for (const auto& v : table) values.push_back(*v);
                const BetaTable candidate(GroundSet(ground.algebra(), ground.elements()),
                                          std::move(values));
                if (!verify_witness(candidate).pass) return false;
            }
            return true;
        }
        const SubsetKey a = slots[slot_index];
        for (const auto& candidate : elems) {
            ++result.assignments_tried;
            table[a] = candidate;
            if (pruning && !a3_holds_at(a)) {
                ++result.pruned;
                continue;
            }
            if (dfs(slot_index + 1)) return true;
        }
        table[a] = std::nullopt;
        return false;
    }
};

}  // namespace

WitnessSearchResult witness_bruteforce(const AlgebraRef& algebra, const std::vector<Effect>& S,
                                       const OracleConfig& cfg, bool enable_pruning) {
    cfg.validate();
    if (!algebra->group().is_integer())
        throw UnsupportedCarrier("brute-force oracle needs a finite integer carrier");
    if (static_cast<int>(S.size()) > cfg.max_ground)
        throw SizeExceeded("|S| exceeds the oracle ground cap");

    const auto elems = enumerate_effects(algebra);
    GroundSet ground(algebra, S);
    const int n = ground.size();

    WitnessSearch search{algebra, elems, {}, {}, GroundSet(algebra, S), enable_pruning,
                         Deadline(cfg.time_budget), {}};
    search.table.resize(std::size_t{1} << n);
    search.table[0] = unit_effect(algebra);
    for (int i = 0; i < n; ++i) search.table[std::size_t{1} << i] = ground.element(i);
    for (SubsetKey key = 0; key < (SubsetKey{1} << n); ++key)
        if (subset_size(key) >= 2) search.slots.push_back(key);
    std::sort(search.slots.begin(), search.slots.end(), [](SubsetKey l, SubsetKey r) {
        return std::make_pair(subset_size(l), l) < std::make_pair(subset_size(r), r);
    });
    search.result.search_space =
        saturating_pow(elems.size(), search.slots.size());

    const bool found = search.dfs(0);
    WitnessSearchResult result = std::move(search.result);
    result.exists = found;
    if (found) {
        std::vector<Effect> values;
        for (const auto& v : search.table) values.push_back(*v);
        BetaTable witness(GroundSet(algebra, S), std::move(values));
        // soundness: anything returned must re-verify
        if (!verify_witness(witness).pass)
            throw Error("internal error: found table fails verification");
        result.witness = std::move(witness);
    }
    return result;
}

HarnessReport theoremmain_harness(const AlgebraRef& algebra, const OracleConfig& cfg,
                                  bool run_certify) {
    cfg.validate();
    if (!algebra->group().is_integer())
        throw UnsupportedCarrier("harness needs a finite integer carrier");
    const Deadline deadline(cfg.time_budget);
    const auto elems = enumerate_effects(algebra);
    const int n = static_cast<int>(elems.size());

    HarnessReport report;

    // decompositions and their subsum tables are shared across all S
    std::vector<std::vector<Effect>> decompositions;
    std::vector<std::map<std::vector<Int>, std::vector<int>>> subsum_tables;
    try {
        decompositions = enumerate_decompositions_impl(algebra, cfg.max_parts, deadline);
        subsum_tables.reserve(decompositions.size());
        for (const auto& d : decompositions) {
            if (deadline.expired()) throw SizeExceeded("time budget exceeded");
            subsum_tables.push_back(subsums_of(algebra, d));
        }
    } catch (const SizeExceeded&) {
        report.truncated = true;
        return report;
    }

    // all index subsets of size <= max_ground, in size-then-lex order
    std::vector<std::vector<int>> subsets;
    std::vector<int> current;
    const std::function<void(int, int)> gen = [&](int start, int remaining) {
        subsets.push_back(current);
        if (remaining == 0) return;
        for (int i = start; i < n; ++i) {
            current.push_back(i);
            gen(i + 1, remaining - 1);
            current.pop_back();
        }
    };
    gen(0, std::min(cfg.max_ground, n));

    for (const auto& indices : subsets) {
        if (deadline.expired()) {
            report.truncated = true;
            break;
        }
        std::vector<Effect> S;
        for (int i : indices) S.push_back(elems[static_cast<std::size_t>(i)]);

        WitnessSearchResult witness_result;
        try {
            witness_result = witness_bruteforce(algebra, S, cfg);
        } catch (const SizeExceeded&) {
            // deadline expired mid-search; report what completed
            report.truncated = true;
            break;
        }

        bool coexistent = false;
        std::size_t covering = 0;
        for (std::size_t d = 0; d < subsum_tables.size(); ++d) {
            bool all_found = true;
            for (const auto& s : S)
                if (!subsum_tables[d].contains(std::get<IntVector>(s.value()).entries)) {
                    all_found = false;
                    break;
                }
            if (all_found) {
                coexistent = true;
                covering = d;
                break;
            }
        }

        HarnessEntry entry;
        entry.element_indices = indices;
        entry.witness_exists = witness_result.exists;
        entry.coexistent = coexistent;
        entry.search_space = witness_result.search_space;
        entry.pruned = witness_result.pruned;
        if (coexistent) entry.decomposition = decompositions[covering];
        if (witness_result.exists && run_certify)
            entry.certified = certify_coexistent(*witness_result.witness).certified();
        entry.witness = std::move(witness_result.witness);
        if (entry.witness_exists != entry.coexistent)
            report.disagreements.push_back(report.entries.size());
        if (entry.coexistent) ++report.coexistent_count;
        report.entries.push_back(std::move(entry));
        ++report.sets_checked;
    }

    report.all_agree = report.disagreements.empty() && !report.truncated;
    return report;
}

}  // namespace coex

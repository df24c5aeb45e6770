#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coex/effects.hpp"
#include "coex/subsets.hpp"

namespace coex {

/**
 * Witness-mapping candidates beta: Fin(S) -> E, the inclusion-exclusion
 * table D_beta(X, A) = sum over X <= Z <= A of (-1)^{|X|+|Z|} beta(Z),
 * verification of the axioms
 *
 *   (A1) beta(empty) = 1
 *   (A2) beta({c}) = c
 *   (A3) D_beta(X, A) >= 0 for all X <= A,
 *
 * and the structural consequences a verified table must satisfy.
 */

/// Default cap on |S| for full-table operations (3^|S| pairs).
constexpr int kDefaultGroundCap = 12;

/// An ordered list of pairwise-distinct effects; subsets of it are bitmasks
/// over the element indices.
class GroundSet {
public:
    GroundSet(AlgebraRef algebra, std::vector<Effect> elements);

    const AlgebraRef& algebra() const { return algebra_; }
    const std::vector<Effect>& elements() const { return elements_; }
    const Effect& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
    int size() const { return static_cast<int>(elements_.size()); }
    SubsetKey all() const { return full_mask(size()); }

    /// Index of an element equal to e, if present.
    std::optional<int> index_of(const Effect& e) const;

private:
    AlgebraRef algebra_;
    std::vector<Effect> elements_;
};

/// A total mapping from subsets of the ground set to effects.
class BetaTable {
public:
    BetaTable(GroundSet ground, std::vector<Effect> values);

    /// Table with beta(empty) = 1, beta({c}) = c, and the given values on the
    /// remaining subsets, listed in increasing mask order.
    static BetaTable from_upper_values(GroundSet ground, const std::vector<Effect>& upper);

    const GroundSet& ground() const { return ground_; }
    const AlgebraRef& algebra() const { return ground_.algebra(); }
    const Effect& at(SubsetKey x) const { return values_.at(x); }
    const std::vector<Effect>& values() const { return values_; }
    int ground_size() const { return ground_.size(); }

private:
    GroundSet ground_;
    std::vector<Effect> values_;  // indexed by SubsetKey, size 2^|S|
};

/// D_beta(X, A) for every admissible pair X <= A, as raw group elements
/// (possibly non-positive so violation reports can show the value).
class DTable {
public:
    const GroupElement& at(SubsetKey x, SubsetKey a) const;
    void set(SubsetKey x, SubsetKey a, GroupElement value);
    std::size_t size() const { return entries_.size(); }

    const std::map<std::pair<SubsetKey, SubsetKey>, GroupElement>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<SubsetKey, SubsetKey>, GroupElement> entries_;  // key (A, X)
};

/// Moebius function of the subset lattice: (-1)^{|X|+|Z|} for X <= Z.
int mobius_mu(SubsetKey x, SubsetKey z);

/// The alternating inclusion-exclusion sum, exact on integer carriers.
GroupElement d_value(const BetaTable& beta, SubsetKey x, SubsetKey a);

/// Same value computed through the peeling recurrence
/// D(X, A) = D(X, A \ {c}) - D(X u {c}, A); cross-check implementation.
GroupElement d_value_rec(const BetaTable& beta, SubsetKey x, SubsetKey a);

/// All 3^|S| values; throws SizeExceeded above the cap.
DTable d_table(const BetaTable& beta, int max_ground = kDefaultGroundCap);

enum class Axiom { A1, A2, A3 };

std::string axiom_name(Axiom axiom);

struct Violation {
    Axiom axiom = Axiom::A3;
    SubsetKey X = 0;   // for A1/A2 both fields hold the offending subset
    SubsetKey A = 0;
    GroupElement value;
};

struct WitnessReport {
    bool pass = false;
    std::vector<Violation> violations;  // sorted by (X, A) index lists
    /// on pass: D <= 1 was additionally asserted for every pair
    bool d_leq_one = false;
    std::size_t pairs_checked = 0;
};

/// Checks (A1), (A2) exactly and (A3) for every pair via positivity in the
/// ambient order; violations are data, not errors.
WitnessReport verify_witness(const BetaTable& beta, int max_ground = kDefaultGroundCap);

/// Moebius inversion: beta(X) = sum over X <= Z <= A of D(Z, A).
/// Holds for arbitrary tables, witness or not.
bool beta_recovery_check(const BetaTable& beta, SubsetKey x, SubsetKey a);

/// Partition identity: the 2^|C| values D(X u Y, A u C), Y <= C, sum to
/// D(X, A). With require_positive, each summand must also be positive.
bool partition_check(const BetaTable& beta, SubsetKey x, SubsetKey a, SubsetKey c,
                     bool require_positive = false);

enum class PropertyStatus { Pass, Fail, NotApplicable };

struct PropertyResult {
    std::string property;
    PropertyStatus status = PropertyStatus::Pass;
    std::string counterexample;  // empty unless failing
};

struct StructuralReport {
    std::vector<PropertyResult> results;
    bool all_hold() const;
};

/// Antitone, lower-bound, zero-absorption, unit-extension and
/// D(X, X u {1}) = 0 properties, exhaustive over Fin(S). Properties about
/// 0 in S / 1 in S are reported NotApplicable when those elements are
/// absent. Requires a verified witness.
StructuralReport structural_properties(const BetaTable& beta);

/// A section for pushforward: per image element, the chosen preimage in S1.
using Section = std::vector<std::pair<Effect, Effect>>;  // (image, preimage)

/// Transport of a witness table along a morphism:
/// beta2(X) = phi(beta1(p(X))) on the deduplicated image of the ground set
/// (ordered by first occurrence). The default section picks the first
/// preimage in ground-set order.
BetaTable pushforward(const BetaTable& beta1, const EAMorphism& phi);
BetaTable pushforward(const BetaTable& beta1, const EAMorphism& phi, const Section& section);

/// Restriction to the sub-ground-set selected by keep (a mask over S).
BetaTable restrict_ground(const BetaTable& beta, SubsetKey keep);

}  // namespace coex

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coex/witness.hpp"

namespace coex {

/**
 * Simple observables on finite powerset Boolean algebras, the observables
 * alpha_A induced by a witness mapping (atom X |-> D(X, A)), projective
 * systems over Fin(S) with connecting maps g_{U,V}(X) = X intersect U, and
 * coexistence certificates.
 */

/// A morphism 2^Omega -> E given by its atom values, which must form a
/// decomposition of unit. Outcomes carry opaque SubsetKey labels; for
/// witness-built observables the label of an atom is the subset X itself.
class SimpleObservable {
public:
    SimpleObservable(AlgebraRef algebra, std::vector<SubsetKey> outcomes,
                     std::vector<Effect> atom_values);

    const AlgebraRef& algebra() const { return algebra_; }
    const std::vector<SubsetKey>& outcomes() const { return outcomes_; }
    const std::vector<Effect>& atom_values() const { return atom_values_; }
    std::size_t outcome_count() const { return outcomes_.size(); }

    const Effect& atom(SubsetKey outcome) const;
    std::optional<std::size_t> outcome_position(SubsetKey outcome) const;

private:
    AlgebraRef algebra_;
    std::vector<SubsetKey> outcomes_;
    std::vector<Effect> atom_values_;  // parallel to outcomes_
    std::unordered_map<SubsetKey, std::size_t> position_;
};

/// Sum of the atoms of the listed outcomes. Always defined for subsets of a
/// decomposition of unit; throws on an unknown outcome label.
Effect observable_eval(const SimpleObservable& alpha, const std::vector<SubsetKey>& outcome_set);

/// The observable alpha_A with outcome set 2^A and atom X |-> D_beta(X, A).
/// Requires a verified witness (UnverifiedWitness otherwise).
SimpleObservable observable_from_witness(const BetaTable& beta, SubsetKey a);

/// The inclusion-directed family {alpha_A : A subset of S} with connecting
/// maps g_{U,V}(X) = X & U.
struct ProjectiveSystem {
    GroundSet ground;
    std::vector<SimpleObservable> observables;  // indexed by the mask of A

    const SimpleObservable& at(SubsetKey a) const {
        return observables.at(static_cast<std::size_t>(a));
    }
};

ProjectiveSystem projective_system_from_witness(const BetaTable& beta,
                                                int max_ground = kDefaultGroundCap);

struct ProjectiveReport {
    bool pass = false;
    std::size_t identity_checks = 0;       // condition (i)
    std::size_t composition_checks = 0;    // condition (ii)
    std::size_t compatibility_checks = 0;  // condition (iii), full subset runs
    std::size_t atom_checks = 0;           // condition (iii), atom-level runs
    std::vector<std::string> failures;
    /// pairs U <= V whose (iii) check ran over every subset of 2^U vs
    /// atom-level only (the latter when |U| exceeds full_enum_limit)
    std::size_t fully_enumerated_pairs = 0;
    std::size_t atom_checked_pairs = 0;
};

/// Verifies Definition conditions (i) and (ii) set-theoretically over all
/// chains and (iii) for all U <= V: exhaustively over every subset of 2^U
/// while |U| <= full_enum_limit and the running family count stays within
/// family_budget, atom-by-atom otherwise (additivity of observable
/// evaluation carries the rest). The fallback point is deterministic and
/// recorded in the report.
ProjectiveReport check_projective(const ProjectiveSystem& system, int full_enum_limit = 4,
                                  std::uint64_t family_budget = std::uint64_t{1} << 22);

/// True iff some outcome set evaluates to e; exhaustive over the 2^|Omega|
/// subsets, capped.
bool range_contains(const SimpleObservable& alpha, const Effect& e, int max_outcomes = 20);

/// The witnessing outcome set, if any (smallest in enumeration order).
std::optional<std::vector<SubsetKey>> range_witness(const SimpleObservable& alpha,
                                                    const Effect& e, int max_outcomes = 20);

struct RangeWitness {
    int element_index = 0;           // index into S
    SubsetKey A = 0;                 // the observable's index
    std::vector<SubsetKey> outcome_set;
};

struct CoexistenceCertificate {
    GroundSet ground;
    BetaTable beta;
    WitnessReport verification;
    ProjectiveSystem system;
    ProjectiveReport projective;
    std::vector<RangeWitness> range_witnesses;  // one per element of S
};

struct CertifyResult {
    WitnessReport verification;
    std::optional<CoexistenceCertificate> certificate;
    bool certified() const { return certificate.has_value(); }
};

/// Runs verify_witness; on pass builds the projective system, checks the
/// definition conditions and per-element range membership, and emits the
/// certificate. On failure the violation list is the result.
CertifyResult certify_coexistent(const BetaTable& beta, int max_ground = kDefaultGroundCap);

}  // namespace coex

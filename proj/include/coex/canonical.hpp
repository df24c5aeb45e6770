#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coex/witness.hpp"

namespace coex {

/**
 * The two canonical witness constructions: the meet mapping on an MV
 * algebra and the product mapping on a commuting family of Hermitian
 * effects; plus the pair-level witness element and the projection
 * commuting criterion.
 */

/// beta(X) = meet of X, with beta(empty) = 1 (empty meet is the top).
/// Requires is_mv_check to pass on the (finite) algebra.
BetaTable meet_witness(const AlgebraRef& algebra, const GroundSet& S);

/// The closed form for the meet witness:
/// D(X, A) = meet(X) (-) (meet(X) ^ join(A \ X)), with meet(empty) = 1 and
/// join(empty) = 0.
Effect dwedge_closed_form(const AlgebraRef& algebra, const GroundSet& S,
                          SubsetKey x, SubsetKey a);

struct MeetCheckReport {
    bool pass = false;
    std::size_t comparisons = 0;
    std::optional<std::pair<SubsetKey, SubsetKey>> first_failure;
};

/// Asserts dwedge_closed_form(X, A) = D_meet(X, A) for all X <= A <= S.
MeetCheckReport meet_witness_check(const AlgebraRef& algebra, const GroundSet& S);

/// beta(X) = product of the members of X in ascending ground-set order,
/// beta(empty) = I. Requires every pair to commute within commute_tol;
/// throws NotCommuting with the offending pair otherwise.
BetaTable product_witness(const GroundSet& S, double commute_tol = 1e-10);

struct FactorizationReport {
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

/// Factorization identity behind the product witness:
/// D(X, A u {c}) = (I - c) . D(X, A), checked in the max norm.
FactorizationReport product_factorization_check(const BetaTable& pi, SubsetKey x, SubsetKey a,
                                                int c_index, double tolerance = 1e-12);

/// c <= a, c <= b and a + (b - c) <= u: c witnesses coexistence of {a, b}.
bool pair_witness_condition(const Effect& a, const Effect& b, const Effect& c);

struct PairWitnessResult {
    std::vector<Effect> witnesses;
    bool exhaustive = false;  // true iff the search covered all of E
};

/// Exhaustive scan of the finite algebra for witness elements of (a, b).
/// UnsupportedCarrier for Hermitian algebras; use the candidate variant.
PairWitnessResult pair_witness_search(const Effect& a, const Effect& b);

/// Sound but inconclusive variant: only the supplied candidates are tried.
PairWitnessResult pair_witness_candidates(const Effect& a, const Effect& b,
                                          const std::vector<Effect>& candidates);

struct ProjectionReport {
    bool coexistent = false;
    double max_commutator = 0.0;
    double max_idempotency_residual = 0.0;
    double tolerance = 0.0;
    /// first non-commuting pair (indices into S), when not coexistent
    std::optional<std::pair<int, int>> offending_pair;
};

/// A set of projections is coexistent iff its elements pairwise commute.
/// Every element must be idempotent within tol; throws NotProjections.
ProjectionReport projection_set_coexistence(const std::vector<Effect>& S, double tol = 1e-9);

}  // namespace coex

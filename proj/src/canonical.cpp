#include "coex/canonical.hpp"

#include <algorithm>
#include <string>

namespace coex {

namespace {

Effect meet_of_mask(const GroundSet& S, SubsetKey x) {
    Effect acc = unit_effect(S.algebra());
    for (int i : subset_indices(x)) {
        const auto m = lattice_meet(acc, S.element(i));
        if (!m) throw NotMV("meet undefined inside an MV computation");
        acc = *m;
    }
    return acc;
}

Effect join_of_mask(const GroundSet& S, SubsetKey x) {
    Effect acc = zero_effect(S.algebra());
    for (int i : subset_indices(x)) {
        const auto j = lattice_join(acc, S.element(i));
        if (!j) throw NotMV("join undefined inside an MV computation");
        acc = *j;
    }
    return acc;
}

}  // namespace

BetaTable meet_witness(const AlgebraRef& algebra, const GroundSet& S) {
    const auto mv = is_mv_check(algebra);
    if (!mv.pass) throw NotMV("meet witness requires an MV algebra: " + mv.detail);
    if (!same_algebra(S.algebra(), algebra))
        throw GroupMismatch("ground set belongs to a different algebra");
    std::vector<Effect> values;
    values.reserve(std::size_t{1} << S.size());
    for (SubsetKey key = 0; key < (SubsetKey{1} << S.size()); ++key)
        values.push_back(meet_of_mask(S, key));
    return BetaTable(GroundSet(S.algebra(), S.elements()), std::move(values));
}

Effect dwedge_closed_form(const AlgebraRef& algebra, const GroundSet& S,
                          SubsetKey x, SubsetKey a) {
    if (!subset_of(x, a)) throw NotComparable("closed form requires X subset of A");
    const auto mv = is_mv_check(algebra);
    if (!mv.pass) throw NotMV("closed form requires an MV algebra: " + mv.detail);
    const Effect meet_x = meet_of_mask(S, x);
    const Effect join_rest = join_of_mask(S, a & ~x);
    const auto inner = lattice_meet(meet_x, join_rest);
    if (!inner) throw NotMV("meet undefined inside an MV computation");
    const auto result = ominus(meet_x, *inner);
    if (!result) throw Error("closed form produced an undefined difference");
    return *result;
}

MeetCheckReport meet_witness_check(const AlgebraRef& algebra, const GroundSet& S) {
    MeetCheckReport report;
    const BetaTable beta = meet_witness(algebra, S);
    const Group& g = algebra->group();
    for_each_submask(S.all(), [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            ++report.comparisons;
            const Effect closed = dwedge_closed_form(algebra, S, x, a);
            if (!report.first_failure && !equals(g, closed.value(), d_value(beta, x, a)))
                report.first_failure = {{x, a}};
        });
    });
    report.pass = !report.first_failure.has_value();
    return report;
}

BetaTable product_witness(const GroundSet& S, double commute_tol) {
    const auto& alg = S.algebra();
    if (alg->group().is_integer())
        throw UnsupportedCarrier("product witness is defined on Hermitian carriers");
    for (int i = 0; i < S.size(); ++i)
        for (int j = i + 1; j < S.size(); ++j) {
            const double residual =
                commutator_max_norm(std::get<HermitianMatrix>(S.element(i).value()),
                                    std::get<HermitianMatrix>(S.element(j).value()));
            if (residual > commute_tol)
                throw NotCommuting("elements " + std::to_string(i) + " and " +
                                   std::to_string(j) + " do not commute (residual " +
                                   std::to_string(residual) + ")");
        }
    const double symmetry_tol = std::max(1e-9, commute_tol);
    std::vector<Effect> values;
    values.reserve(std::size_t{1} << S.size());
    for (SubsetKey key = 0; key < (SubsetKey{1} << S.size()); ++key) {
        HermitianMatrix prod = HermitianMatrix::identity(alg->group().dimension());
        for (int i : subset_indices(key))
            prod = hm_product(prod, std::get<HermitianMatrix>(S.element(i).value()),
                              symmetry_tol);
        values.push_back(make_effect(alg, GroupElement(std::move(prod))));
    }
    return BetaTable(GroundSet(alg, S.elements()), std::move(values));
}

FactorizationReport product_factorization_check(const BetaTable& pi, SubsetKey x, SubsetKey a,
                                                int c_index, double tolerance) {
    if (!subset_of(x, a)) throw NotComparable("factorization check requires X subset of A");
    const SubsetKey cbit = SubsetKey{1} << c_index;
    if (a & cbit) throw Error("factorization check requires c outside A");
    const auto& alg = pi.algebra();
    if (alg->group().is_integer())
        throw UnsupportedCarrier("factorization check applies to Hermitian carriers");

    const auto lhs = std::get<HermitianMatrix>(d_value(pi, x, a | cbit));
    const auto d_xa = std::get<HermitianMatrix>(d_value(pi, x, a));
    const auto& c = std::get<HermitianMatrix>(pi.ground().element(c_index).value());
    const auto i_minus_c = hm_sub(HermitianMatrix::identity(c.dimension), c);
    // (I - c) . D(X, A); raw product, compared entrywise
    const auto raw = hm_raw_product(i_minus_c, d_xa);

    double residual = 0.0;
    for (std::size_t k = 0; k < raw.size(); ++k)
        residual = std::max(residual, std::abs(raw[k] - lhs.entries[k]));

    FactorizationReport report;
    report.residual = residual;
    report.tolerance = tolerance;
    report.pass = residual <= tolerance;
    return report;
}

bool pair_witness_condition(const Effect& a, const Effect& b, const Effect& c) {
    require_same_algebra(a, b);
    require_same_algebra(a, c);
    if (!leq_effects(c, a) || !leq_effects(c, b)) return false;
    const auto b_minus_c = ominus(b, c);
    return b_minus_c && is_perp(a, *b_minus_c);
}

PairWitnessResult pair_witness_search(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    if (!a.algebra()->group().is_integer())
        throw UnsupportedCarrier("exhaustive pair search needs a finite integer carrier");
    PairWitnessResult result;
    for (const auto& c : enumerate_effects(a.algebra()))
        if (pair_witness_condition(a, b, c)) result.witnesses.push_back(c);
    result.exhaustive = true;
    return result;
}

PairWitnessResult pair_witness_candidates(const Effect& a, const Effect& b,
                                          const std::vector<Effect>& candidates) {
    PairWitnessResult result;
    for (const auto& c : candidates)
        if (pair_witness_condition(a, b, c)) result.witnesses.push_back(c);
    result.exhaustive = false;
    return result;
}

ProjectionReport projection_set_coexistence(const std::vector<Effect>& S, double tol) {
    ProjectionReport report;
    report.tolerance = tol;
    std::vector<const HermitianMatrix*> mats;
    for (const auto& e : S) {
        if (e.algebra()->group().is_integer())
            throw UnsupportedCarrier("projection criterion applies to Hermitian effects");
        mats.push_back(&std::get<HermitianMatrix>(e.value()));
    }
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const auto sq = hm_raw_product(*mats[i], *mats[i]);
        double residual = 0.0;
        for (std::size_t k = 0; k < sq.size(); ++k)
            residual = std::max(residual, std::abs(sq[k] - mats[i]->entries[k]));
        report.max_idempotency_residual = std::max(report.max_idempotency_residual, residual);
        if (residual > tol)
            throw NotProjections("element " + std::to_string(i) +
                                 " is not idempotent (residual " + std::to_string(residual) +
                                 ")");
    }
    report.coexistent = true;
    for (std::size_t i = 0; i < mats.size() && report.coexistent; ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j) {
            const double residual = commutator_max_norm(*mats[i], *mats[j]);
            report.max_commutator = std::max(report.max_commutator, residual);
            if (residual > tol) {
                report.coexistent = false;
                report.offending_pair = {{static_cast<int>(i), static_cast<int>(j)}};
                break;
            }
        }
    return report;
}

}  // namespace coex

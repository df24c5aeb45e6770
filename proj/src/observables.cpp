#include "coex/observables.hpp"

#include <algorithm>

namespace coex {

SimpleObservable::SimpleObservable(AlgebraRef algebra, std::vector<SubsetKey> outcomes,
                                   std::vector<Effect> atom_values)
    : algebra_(std::move(algebra)),
      outcomes_(std::move(outcomes)),
      atom_values_(std::move(atom_values)) {
    if (outcomes_.size() != atom_values_.size())
        throw Error("observable outcomes and atom values must be parallel");
    if (outcomes_.empty()) throw Error("observable requires at least one outcome");
    for (std::size_t i = 0; i < outcomes_.size(); ++i)
        if (!position_.emplace(outcomes_[i], i).second)
            throw Error("duplicate outcome label");
    std::vector<Effect> parts;
    for (const auto& v : atom_values_) parts.push_back(v);
    if (!decomposition_check(algebra_, parts))
        throw Error("observable atoms must form a decomposition of unit");
}

std::optional<std::size_t> SimpleObservable::outcome_position(SubsetKey outcome) const {
    const auto it = position_.find(outcome);
    if (it == position_.end()) return std::nullopt;
    return it->second;
}

const Effect& SimpleObservable::atom(SubsetKey outcome) const {
    const auto pos = outcome_position(outcome);
    if (!pos) throw Error("unknown outcome label");
    return atom_values_[*pos];
}

Effect observable_eval(const SimpleObservable& alpha,
                       const std::vector<SubsetKey>& outcome_set) {
    GroupElement acc = zero_element(alpha.algebra()->group());
    std::vector<bool> seen(alpha.outcome_count(), false);
    for (SubsetKey outcome : outcome_set) {
        const auto pos = alpha.outcome_position(outcome);
        if (!pos) throw Error("unknown outcome label");
        if (seen[*pos]) throw Error("outcome listed twice");
        seen[*pos] = true;
        acc = add(acc, alpha.atom_values()[*pos].value());
    }
    // a subsum of a decomposition of unit is always an effect
    return make_effect(alpha.algebra(), std::move(acc));
}

namespace {

SimpleObservable observable_from_witness_unchecked(const BetaTable& beta, SubsetKey a) {
    std::vector<SubsetKey> outcomes;
    std::vector<Effect> atoms;
    for_each_submask(a, [&](SubsetKey x) {
        outcomes.push_back(x);
        atoms.push_back(make_effect(beta.algebra(), d_value(beta, x, a)));
    });
    return SimpleObservable(beta.algebra(), std::move(outcomes), std::move(atoms));
}

}  // namespace

SimpleObservable observable_from_witness(const BetaTable& beta, SubsetKey a) {
    if (!subset_of(a, beta.ground().all()))
        throw NotComparable("A must be a subset of the ground set");
    const auto report = verify_witness(beta);
    if (!report.pass)
        throw UnverifiedWitness("observable construction requires a verified witness");
    return observable_from_witness_unchecked(beta, a);
}

ProjectiveSystem projective_system_from_witness(const BetaTable& beta, int max_ground) {
    if (beta.ground_size() > max_ground)
        throw SizeExceeded("ground set larger than the configured cap");
    const auto report = verify_witness(beta, max_ground);
    if (!report.pass)
        throw UnverifiedWitness("projective system requires a verified witness");
    ProjectiveSystem system{GroundSet(beta.algebra(), beta.ground().elements()), {}};
    const SubsetKey all = beta.ground().all();
    system.observables.reserve(std::size_t{1} << beta.ground_size());
    for (SubsetKey a = 0; a <= all; ++a)
        system.observables.push_back(observable_from_witness_unchecked(beta, a));
    return system;
}

namespace {

std::string mask_str(SubsetKey key) {
    std::string s = "{";
    bool first = true;
    for (int i : subset_indices(key)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

// g_{U,V}^{-1}({X}) = {X u C0 : C0 subset of V \ U}
std::vector<SubsetKey> preimage_of_outcome(SubsetKey x, SubsetKey u, SubsetKey v) {
    std::vector<SubsetKey> out;
    for_each_submask(v & ~u, [&](SubsetKey c0) { out.push_back(x | c0); });
    return out;
}

}  // namespace

ProjectiveReport check_projective(const ProjectiveSystem& system, int full_enum_limit,
                                  std::uint64_t family_budget) {
    ProjectiveReport report;
    const SubsetKey all = system.ground.all();
    const Group& g = system.ground.algebra()->group();
    std::uint64_t families_used = 0;

    // (i) g_{U,U} is the identity on Omega_U
    for_each_submask(all, [&](SubsetKey u) {
        for (SubsetKey x : system.at(u).outcomes()) {
            ++report.identity_checks;
            if ((x & u) != x)
                report.failures.push_back("(i) fails at U=" + mask_str(u) +
                                          ", X=" + mask_str(x));
        }
    });

    // (ii) g_{U,V} o g_{V,W} = g_{U,W} on every chain U <= V <= W
    for_each_submask(all, [&](SubsetKey w) {
        for_each_submask(w, [&](SubsetKey v) {
            for_each_submask(v, [&](SubsetKey u) {
                for (SubsetKey x : system.at(w).outcomes()) {
                    ++report.composition_checks;
                    if (((x & v) & u) != (x & u))
                        report.failures.push_back("(ii) fails at U=" + mask_str(u) +
                                                  " V=" + mask_str(v) + " W=" + mask_str(w));
                }
            });
        });
    });

    // (iii) alpha_U(XX) = alpha_V(g^{-1}(XX)) for U <= V
    for_each_submask(all, [&](SubsetKey v) {
        for_each_submask(v, [&](SubsetKey u) {
            const auto& alpha_u = system.at(u);
            const auto& alpha_v = system.at(v);
            const std::size_t m = alpha_u.outcome_count();
            const bool enumerate_fully =
                subset_size(u) <= full_enum_limit &&
                families_used + (std::uint64_t{1} << m) <= family_budget;
            if (enumerate_fully) {
                ++report.fully_enumerated_pairs;
                families_used += std::uint64_t{1} << m;
                // every family XX of outcomes of alpha_U
                for (std::uint64_t family = 0; family < (std::uint64_t{1} << m); ++family) {
                    std::vector<SubsetKey> xs;
                    std::vector<SubsetKey> pre;
                    for (std::size_t i = 0; i < m; ++i)
                        if (family & (std::uint64_t{1} << i)) {
                            const SubsetKey x = alpha_u.outcomes()[i];
                            xs.push_back(x);
                            for (SubsetKey p : preimage_of_outcome(x, u, v)) pre.push_back(p);
                        }
                    ++report.compatibility_checks;
                    const Effect lhs = observable_eval(alpha_u, xs);
                    const Effect rhs = observable_eval(alpha_v, pre);
                    if (!equals(g, lhs.value(), rhs.value()))
                        report.failures.push_back("(iii) fails at U=" + mask_str(u) +
                                                  " V=" + mask_str(v));
                }
            } else {
                ++report.atom_checked_pairs;
                // atom-level: additivity of observable_eval carries all XX
                for (SubsetKey x : alpha_u.outcomes()) {
                    ++report.atom_checks;
                    const Effect lhs = observable_eval(alpha_u, {x});
                    const Effect rhs = observable_eval(alpha_v, preimage_of_outcome(x, u, v));
                    if (!equals(g, lhs.value(), rhs.value()))
                        report.failures.push_back("(iii) atom fails at U=" + mask_str(u) +
                                                  " V=" + mask_str(v) + " X=" + mask_str(x));
                }
            }
        });
    });

    report.pass = report.failures.empty();
    return report;
}

bool range_contains(const SimpleObservable& alpha, const Effect& e, int max_outcomes) {
    return range_witness(alpha, e, max_outcomes).has_value();
}

std::optional<std::vector<SubsetKey>> range_witness(const SimpleObservable& alpha,
                                                    const Effect& e, int max_outcomes) {
    const std::size_t m = alpha.outcome_count();
    if (m > static_cast<std::size_t>(max_outcomes))
        throw SizeExceeded("outcome set too large for exhaustive range search");
    const Group& g = alpha.algebra()->group();
    for (std::uint64_t family = 0; family < (std::uint64_t{1} << m); ++family) {
        GroupElement acc = zero_element(g);
        std::vector<SubsetKey> xs;
        for (std::size_t i = 0; i < m; ++i)
            if (family & (std::uint64_t{1} << i)) {
                xs.push_back(alpha.outcomes()[i]);
                acc = add(acc, alpha.atom_values()[i].value());
            }
        if (equals(g, acc, e.value())) return xs;
    }
    return std::nullopt;
}

CertifyResult certify_coexistent(const BetaTable& beta, int max_ground) {
    CertifyResult result{verify_witness(beta, max_ground), std::nullopt};
    if (!result.verification.pass) return result;

    ProjectiveSystem system = projective_system_from_witness(beta, max_ground);
    ProjectiveReport projective = check_projective(system);

    std::vector<RangeWitness> witnesses;
    for (int i = 0; i < beta.ground_size(); ++i) {
        const SubsetKey a = SubsetKey{1} << i;
        const auto found = range_witness(system.at(a), beta.ground().element(i));
        if (!found) {
            // cannot happen for a verified witness: alpha_{{a}}({{a}}) = a
            projective.failures.push_back("element " + std::to_string(i) +
                                          " missing from ran(alpha)");
            projective.pass = false;
            continue;
        }
        witnesses.push_back({i, a, *found});
    }

    if (!projective.pass) return result;
    result.certificate = CoexistenceCertificate{
        GroundSet(beta.algebra(), beta.ground().elements()),
        beta,
        result.verification,
        std::move(system),
        std::move(projective),
        std::move(witnesses)};
    return result;
}

}  // namespace coex

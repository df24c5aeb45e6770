#include "coex/witness.hpp"

#include <algorithm>

namespace coex {

GroundSet::GroundSet(AlgebraRef algebra, std::vector<Effect> elements)
    : algebra_(std::move(algebra)), elements_(std::move(elements)) {
    if (static_cast<int>(elements_.size()) > kMaxGroundBits)
        throw SizeExceeded("ground set exceeds the subset-key width");
    for (const auto& e : elements_)
        if (!same_algebra(e.algebra(), algebra_))
            throw GroupMismatch("ground-set element from a different algebra");
    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (std::size_t j = i + 1; j < elements_.size(); ++j)
            if (effect_equal(elements_[i], elements_[j]))
                throw Error("ground-set elements must be pairwise distinct");
}

std::optional<int> GroundSet::index_of(const Effect& e) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (effect_equal(elements_[i], e)) return static_cast<int>(i);
    return std::nullopt;
}

BetaTable::BetaTable(GroundSet ground, std::vector<Effect> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
    const std::size_t expected = std::size_t{1} << ground_.size();
    if (values_.size() != expected)
        throw Error("beta table must be total over all 2^|S| subsets");
    for (const auto& v : values_)
        if (!same_algebra(v.algebra(), ground_.algebra()))
            throw GroupMismatch("beta value from a different algebra");
}

BetaTable BetaTable::from_upper_values(GroundSet ground, const std::vector<Effect>& upper) {
    const int n = ground.size();
    std::vector<Effect> values;
    values.reserve(std::size_t{1} << n);
    std::size_t next = 0;
    for (SubsetKey key = 0; key < (SubsetKey{1} << n); ++key) {
        if (key == 0) {
            values.push_back(unit_effect(ground.algebra()));
        } else if (subset_size(key) == 1) {
            values.push_back(ground.element(subset_indices(key).front()));
        } else {
            if (next >= upper.size()) throw Error("not enough values for the upper subsets");
            values.push_back(upper[next++]);
        }
    }
    if (next != upper.size()) throw Error("too many values for the upper subsets");
    return BetaTable(std::move(ground), std::move(values));
}

const GroupElement& DTable::at(SubsetKey x, SubsetKey a) const {
    const auto it = entries_.find({a, x});
    if (it == entries_.end()) throw NotComparable("no D entry for the requested pair");
    return it->second;
}

void DTable::set(SubsetKey x, SubsetKey a, GroupElement value) {
    entries_.insert_or_assign({a, x}, std::move(value));
}

int mobius_mu(SubsetKey x, SubsetKey z) {
    if (!subset_of(x, z)) throw NotComparable("mu(X, Z) requires X subset of Z");
    return (subset_size(x ^ z) % 2 == 0) ? 1 : -1;
}

GroupElement d_value(const BetaTable& beta, SubsetKey x, SubsetKey a) {
    if (!subset_of(x, a)) throw NotComparable("D(X, A) requires X subset of A");
    const Group& g = beta.algebra()->group();
    GroupElement acc = zero_element(g);
    for_each_submask(a & ~x, [&](SubsetKey extra) {
        const SubsetKey z = x | extra;
        const GroupElement& term = beta.at(z).value();
        acc = (subset_size(extra) % 2 == 0) ? add(acc, term) : subtract(acc, term);
    });
    return acc;
}

GroupElement d_value_rec(const BetaTable& beta, SubsetKey x, SubsetKey a) {
    if (!subset_of(x, a)) throw NotComparable("D(X, A) requires X subset of A");
    const SubsetKey free = a & ~x;
    if (free == 0) return beta.at(x).value();
    const SubsetKey c = free & (~free + 1);  // lowest element of A \ X
    return subtract(d_value_rec(beta, x, a & ~c), d_value_rec(beta, x | c, a));
}

DTable d_table(const BetaTable& beta, int max_ground) {
    if (beta.ground_size() > max_ground)
        throw SizeExceeded("ground set larger than the configured cap");
    DTable table;
    const SubsetKey all = beta.ground().all();
    for_each_submask(all, [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) { table.set(x, a, d_value(beta, x, a)); });
    });
    return table;
}

std::string axiom_name(Axiom axiom) {
    switch (axiom) {
        case Axiom::A1: return "A1";
        case Axiom::A2: return "A2";
        case Axiom::A3: return "A3";
    }
    return "?";
}

namespace {

void sort_violations(std::vector<Violation>& violations) {
    std::sort(violations.begin(), violations.end(), [](const Violation& l, const Violation& r) {
        const auto lk = std::make_pair(subset_indices(l.X), subset_indices(l.A));
        const auto rk = std::make_pair(subset_indices(r.X), subset_indices(r.A));
        return lk < rk;
    });
}

}  // namespace

WitnessReport verify_witness(const BetaTable& beta, int max_ground) {
    if (beta.ground_size() > max_ground)
        throw SizeExceeded("ground set larger than the configured cap");
    WitnessReport report;
    const auto& alg = beta.algebra();
    const Group& g = alg->group();

    if (!equals(g, beta.at(0).value(), alg->unit()))
        report.violations.push_back({Axiom::A1, 0, 0, beta.at(0).value()});
    for (int i = 0; i < beta.ground_size(); ++i) {
        const SubsetKey key = SubsetKey{1} << i;
        if (!equals(g, beta.at(key).value(), beta.ground().element(i).value()))
            report.violations.push_back({Axiom::A2, key, key, beta.at(key).value()});
    }

    bool d_leq_one = true;
    const SubsetKey all = beta.ground().all();
    for_each_submask(all, [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            GroupElement d = d_value(beta, x, a);
            ++report.pairs_checked;
            if (!is_positive(g, d)) {
                report.violations.push_back({Axiom::A3, x, a, std::move(d)});
            } else if (!leq(g, d, alg->unit())) {
                d_leq_one = false;
            }
        });
    });

    report.pass = report.violations.empty();
    report.d_leq_one = report.pass && d_leq_one;
    sort_violations(report.violations);
    return report;
}

bool beta_recovery_check(const BetaTable& beta, SubsetKey x, SubsetKey a) {
    if (!subset_of(x, a)) throw NotComparable("recovery check requires X subset of A");
    const Group& g = beta.algebra()->group();
    GroupElement acc = zero_element(g);
    for_each_submask(a & ~x, [&](SubsetKey extra) {
        acc = add(acc, d_value(beta, x | extra, a));
    });
    return equals(g, acc, beta.at(x).value());
}

bool partition_check(const BetaTable& beta, SubsetKey x, SubsetKey a, SubsetKey c,
                     bool require_positive) {
    if (!subset_of(x, a)) throw NotComparable("partition check requires X subset of A");
    if ((a & c) != 0) throw Error("partition check requires C disjoint from A");
    const Group& g = beta.algebra()->group();
    GroupElement acc = zero_element(g);
    bool all_positive = true;
    for_each_submask(c, [&](SubsetKey y) {
        GroupElement term = d_value(beta, x | y, a | c);
        if (require_positive && !is_positive(g, term)) all_positive = false;
        acc = add(acc, term);
    });
    return all_positive && equals(g, acc, d_value(beta, x, a));
}

bool StructuralReport::all_hold() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) {
        return r.status != PropertyStatus::Fail;
    });
}

namespace {

std::string mask_to_string(SubsetKey key) {
    std::string s = "{";
    bool first = true;
    for (int i : subset_indices(key)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

}  // namespace

StructuralReport structural_properties(const BetaTable& beta) {
    const auto verification = verify_witness(beta);
    if (!verification.pass)
        throw UnverifiedWitness("structural properties require a verified witness");

    StructuralReport report;
    const auto& ground = beta.ground();
    const SubsetKey all = ground.all();

    // beta is antitone: X subset of Y implies beta(Y) <= beta(X)
    PropertyResult antitone{"antitone", PropertyStatus::Pass, ""};
    for_each_submask(all, [&](SubsetKey y) {
        for_each_submask(y, [&](SubsetKey x) {
            if (antitone.status == PropertyStatus::Pass &&
                !leq_effects(beta.at(y), beta.at(x))) {
                antitone.status = PropertyStatus::Fail;
                antitone.counterexample = mask_to_string(x) + " subset of " + mask_to_string(y);
            }
        });
    });
    report.results.push_back(std::move(antitone));

    // beta(X) is a lower bound of X
    PropertyResult lower{"lower_bound", PropertyStatus::Pass, ""};
    for_each_submask(all, [&](SubsetKey x) {
        for (int i : subset_indices(x)) {
            if (lower.status == PropertyStatus::Pass &&
                !leq_effects(beta.at(x), ground.element(i))) {
                lower.status = PropertyStatus::Fail;
                lower.counterexample = "beta" + mask_to_string(x) + " above element " +
                                       std::to_string(i);
            }
        }
    });
    report.results.push_back(std::move(lower));

    const auto zero = zero_effect(beta.algebra());
    const auto unit = unit_effect(beta.algebra());
    const auto zero_index = ground.index_of(zero);
    const auto unit_index = ground.index_of(unit);

    // 0 in X forces beta(X) = 0
    PropertyResult absorb{"zero_absorption", PropertyStatus::NotApplicable, ""};
    if (zero_index) {
        absorb.status = PropertyStatus::Pass;
        const SubsetKey zbit = SubsetKey{1} << *zero_index;
        for_each_submask(all, [&](SubsetKey x) {
            if ((x & zbit) && absorb.status == PropertyStatus::Pass &&
                !effect_equal(beta.at(x), zero)) {
                absorb.status = PropertyStatus::Fail;
                absorb.counterexample = mask_to_string(x);
            }
        });
    }
    report.results.push_back(std::move(absorb));

    // beta(X) = beta(X u {1})
    PropertyResult extend{"unit_extension", PropertyStatus::NotApplicable, ""};
    if (unit_index) {
        extend.status = PropertyStatus::Pass;
        const SubsetKey ubit = SubsetKey{1} << *unit_index;
        for_each_submask(all, [&](SubsetKey x) {
            if (extend.status == PropertyStatus::Pass &&
                !effect_equal(beta.at(x), beta.at(x | ubit))) {
                extend.status = PropertyStatus::Fail;
                extend.counterexample = mask_to_string(x);
            }
        });
    }
    report.results.push_back(std::move(extend));

    // D(X, X u {1}) = 0 whenever 1 in S \ X
    PropertyResult dzero{"unit_d_zero", PropertyStatus::NotApplicable, ""};
    if (unit_index) {
        dzero.status = PropertyStatus::Pass;
        const SubsetKey ubit = SubsetKey{1} << *unit_index;
        const Group& g = beta.algebra()->group();
        for_each_submask(all, [&](SubsetKey x) {
            if (!(x & ubit) && dzero.status == PropertyStatus::Pass &&
                !is_zero(g, d_value(beta, x, x | ubit))) {
                dzero.status = PropertyStatus::Fail;
                dzero.counterexample = mask_to_string(x);
            }
        });
    }
    report.results.push_back(std::move(dzero));

    return report;
}

// ---------------------------------------------------------------------------
// Pushforward and restriction

namespace {

struct ImageGround {
    std::vector<Effect> image_elements;   // deduplicated, by first occurrence
    std::vector<int> preimage_index;      // into the source ground set
};

ImageGround image_of_ground(const BetaTable& beta1, const EAMorphism& phi) {
    ImageGround out;
    const auto& ground = beta1.ground();
    for (int i = 0; i < ground.size(); ++i) {
        const Effect img = phi.apply(ground.element(i));
        bool seen = false;
        for (const auto& existing : out.image_elements)
            if (effect_equal(existing, img)) {
                seen = true;
                break;
            }
        if (!seen) {
            out.image_elements.push_back(img);
            out.preimage_index.push_back(i);
        }
    }
    return out;
}

BetaTable pushforward_with(const BetaTable& beta1, const EAMorphism& phi,
                           const ImageGround& img) {
    const int n2 = static_cast<int>(img.image_elements.size());
    GroundSet ground2(phi.target(), img.image_elements);
    std::vector<Effect> values;
    values.reserve(std::size_t{1} << n2);
    for (SubsetKey key2 = 0; key2 < (SubsetKey{1} << n2); ++key2) {
        SubsetKey key1 = 0;
        for (int j = 0; j < n2; ++j)
            if (key2 & (SubsetKey{1} << j))
                key1 |= SubsetKey{1} << img.preimage_index[static_cast<std::size_t>(j)];
        values.push_back(phi.apply(beta1.at(key1)));
    }
    return BetaTable(std::move(ground2), std::move(values));
}

}  // namespace

BetaTable pushforward(const BetaTable& beta1, const EAMorphism& phi) {
    return pushforward_with(beta1, phi, image_of_ground(beta1, phi));
}

BetaTable pushforward(const BetaTable& beta1, const EAMorphism& phi, const Section& section) {
    ImageGround img = image_of_ground(beta1, phi);
    std::vector<bool> assigned(img.image_elements.size(), false);
    for (const auto& [image, preimage] : section) {
        const auto src_index = beta1.ground().index_of(preimage);
        if (!src_index) throw InvalidSection("section preimage is not in the ground set");
        if (!effect_equal(phi.apply(preimage), image))
            throw InvalidSection("section preimage does not map to its image");
        bool matched = false;
        for (std::size_t j = 0; j < img.image_elements.size(); ++j)
            if (effect_equal(img.image_elements[j], image)) {
                img.preimage_index[j] = *src_index;
                assigned[j] = true;
                matched = true;
                break;
            }
        if (!matched) throw InvalidSection("section image is not in the image of the ground set");
    }
    for (bool a : assigned)
        if (!a) throw InvalidSection("section must cover every image element");
    return pushforward_with(beta1, phi, img);
}

BetaTable restrict_ground(const BetaTable& beta, SubsetKey keep) {
    const auto& ground = beta.ground();
    if (!subset_of(keep, ground.all()))
        throw NotComparable("restriction mask is not a subset of the ground set");
    std::vector<Effect> kept;
    std::vector<int> positions = subset_indices(keep);
    for (int i : positions) kept.push_back(ground.element(i));
    GroundSet ground0(ground.algebra(), std::move(kept));
    const int n0 = static_cast<int>(positions.size());
    std::vector<Effect> values;
    values.reserve(std::size_t{1} << n0);
    for (SubsetKey key0 = 0; key0 < (SubsetKey{1} << n0); ++key0) {
        SubsetKey key = 0;
        for (int j = 0; j < n0; ++j)
            if (key0 & (SubsetKey{1} << j))
                key |= SubsetKey{1} << positions[static_cast<std::size_t>(j)];
        values.push_back(beta.at(key));
    }
    return BetaTable(std::move(ground0), std::move(values));
}

}  // namespace coex

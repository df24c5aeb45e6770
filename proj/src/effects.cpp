#include "coex/effects.hpp"

#include <algorithm>
#include <set>

namespace coex {

Effect::Effect(GroupElement value, AlgebraRef algebra)
    : value_(std::move(value)), algebra_(std::move(algebra)) {
    if (!algebra_) throw Error("effect requires an algebra");
}

AlgebraRef make_algebra(UnitalGroup ambient) {
    return std::make_shared<const IntervalEffectAlgebra>(std::move(ambient));
}

AlgebraRef make_algebra(Group group, GroupElement unit) {
    return make_algebra(UnitalGroup(std::move(group), std::move(unit)));
}

AlgebraRef with_element_cache(const AlgebraRef& algebra) {
    auto copy = std::make_shared<IntervalEffectAlgebra>(algebra->ambient());
    std::vector<GroupElement> values;
    for (const auto& e : enumerate_effects(algebra)) values.push_back(e.value());
    copy->cache_ = std::move(values);
    return copy;
}

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_algebra(const Effect& a, const Effect& b) {
    if (!same_algebra(a.algebra(), b.algebra()))
        throw GroupMismatch("effects from different algebras");
}

bool effect_equal(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    return equals(a.algebra()->group(), a.value(), b.value());
}

Effect make_effect(const AlgebraRef& algebra, GroupElement x) {
    require_element(algebra->group(), x);
    if (!is_positive(algebra->group(), x))
        throw OutOfInterval("element is not >= 0");
    if (!leq(algebra->group(), x, algebra->unit()))
        throw OutOfInterval("element is not <= u");
    return Effect(std::move(x), algebra);
}

std::optional<Effect> try_make_effect(const AlgebraRef& algebra, GroupElement x) {
    if (!element_in_group(algebra->group(), x)) return std::nullopt;
    if (!is_positive(algebra->group(), x)) return std::nullopt;
    if (!leq(algebra->group(), x, algebra->unit())) return std::nullopt;
    return Effect(std::move(x), algebra);
}

Effect zero_effect(const AlgebraRef& algebra) {
    return Effect(zero_element(algebra->group()), algebra);
}

Effect unit_effect(const AlgebraRef& algebra) {
    return Effect(algebra->unit(), algebra);
}

std::optional<Effect> oplus(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    const auto& alg = a.algebra();
    GroupElement sum = add(a.value(), b.value());
    if (!leq(alg->group(), sum, alg->unit())) return std::nullopt;
    return Effect(std::move(sum), alg);
}

std::optional<Effect> ominus(const Effect& b, const Effect& a) {
    require_same_algebra(a, b);
    const auto& alg = a.algebra();
    if (!leq(alg->group(), a.value(), b.value())) return std::nullopt;
    return Effect(subtract(b.value(), a.value()), alg);
}

Effect orthosupplement(const Effect& a) {
    const auto& alg = a.algebra();
    return Effect(subtract(alg->unit(), a.value()), alg);
}

bool is_perp(const Effect& a, const Effect& b) { return oplus(a, b).has_value(); }

bool leq_effects(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    return leq(a.algebra()->group(), a.value(), b.value());
}

// ---------------------------------------------------------------------------
// Enumeration of finite models

namespace {

void enumerate_coordinatewise(const AlgebraRef& algebra, std::size_t max_elements,
                              std::vector<IntVector>& out) {
    const auto& u = std::get<IntVector>(algebra->unit());
    const int dim = u.dimension();
    IntVector current(std::vector<Int>(static_cast<std::size_t>(dim), 0));
    while (true) {
        out.push_back(current);
        if (out.size() > max_elements) throw SizeExceeded("too many effects to enumerate");
        int i = dim - 1;
        while (i >= 0 && current.entries[i] == u.entries[i]) {
            current.entries[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++current.entries[i];
    }
    std::sort(out.begin(), out.end());
}

// All monoid elements x = sum k_i g_i with f(x) <= f(u), then filtered by
// u - x in cone. f > 0 on generators bounds the total coefficient mass.
void cone_combinations(const ConeSpec& cone, std::size_t gen_index, Int budget,
                       const IntVector& current, std::set<IntVector>& sums) {
    sums.insert(current);
    if (gen_index == cone.generators().size()) return;
    const Int fg = iv_dot(cone.functional(), cone.generators()[gen_index]);
    IntVector next = current;
    for (Int k = 1; k * fg <= budget; ++k) {
        next = iv_add(next, cone.generators()[gen_index]);
        cone_combinations(cone, gen_index + 1, budget - k * fg, next, sums);
    }
    cone_combinations(cone, gen_index + 1, budget, current, sums);
}

void enumerate_cone(const AlgebraRef& algebra, std::size_t max_elements,
                    std::vector<IntVector>& out) {
    const auto& cone = *algebra->group().int_group().cone;
    const auto& u = std::get<IntVector>(algebra->unit());
    const Int budget = iv_dot(cone.functional(), u);
    std::set<IntVector> sums;
    IntVector zero(std::vector<Int>(static_cast<std::size_t>(u.dimension()), 0));
    cone_combinations(cone, 0, budget, zero, sums);
    for (const auto& x : sums) {
        if (cone.contains(iv_sub(u, x))) out.push_back(x);
        if (out.size() > max_elements) throw SizeExceeded("too many effects to enumerate");
    }
    // std::set iterates in lexicographic order already
}

}  // namespace

std::vector<Effect> enumerate_effects(const AlgebraRef& algebra, std::size_t max_elements) {
    if (!algebra->group().is_integer())
        throw UnsupportedCarrier("cannot enumerate a Hermitian interval effect algebra");
    std::vector<IntVector> values;
    if (const auto& cached = algebra->element_cache()) {
        values.reserve(cached->size());
        for (const auto& v : *cached) values.push_back(std::get<IntVector>(v));
    } else if (algebra->group().kind() == GroupKind::IntCoordinatewise) {
        enumerate_coordinatewise(algebra, max_elements, values);
    } else {
        enumerate_cone(algebra, max_elements, values);
    }
    std::vector<Effect> out;
    out.reserve(values.size());
    for (auto& v : values) out.emplace_back(GroupElement(std::move(v)), algebra);
    return out;
}

// ---------------------------------------------------------------------------
// Lattice structure

namespace {

std::optional<Effect> bound_search(const Effect& a, const Effect& b, bool meet) {
    const auto& alg = a.algebra();
    const auto elems = enumerate_effects(alg);
    std::vector<const Effect*> bounds;
    for (const auto& z : elems) {
        const bool is_bound = meet ? (leq_effects(z, a) && leq_effects(z, b))
                                   : (leq_effects(a, z) && leq_effects(b, z));
        if (is_bound) bounds.push_back(&z);
    }
    for (const Effect* candidate : bounds) {
        bool dominates_all = true;
        for (const Effect* z : bounds) {
            const bool ok = meet ? leq_effects(*z, *candidate) : leq_effects(*candidate, *z);
            if (!ok) {
                dominates_all = false;
                break;
            }
        }
        if (dominates_all) return *candidate;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Effect> lattice_meet(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    const auto& alg = a.algebra();
    if (alg->group().kind() == GroupKind::IntCoordinatewise) {
        const auto& av = std::get<IntVector>(a.value());
        const auto& bv = std::get<IntVector>(b.value());
        IntVector m = av;
        for (std::size_t i = 0; i < m.entries.size(); ++i)
            m.entries[i] = std::min(av.entries[i], bv.entries[i]);
        return Effect(GroupElement(std::move(m)), alg);
    }
    return bound_search(a, b, /*meet=*/true);
}

std::optional<Effect> lattice_join(const Effect& a, const Effect& b) {
    require_same_algebra(a, b);
    const auto& alg = a.algebra();
    if (alg->group().kind() == GroupKind::IntCoordinatewise) {
        const auto& av = std::get<IntVector>(a.value());
        const auto& bv = std::get<IntVector>(b.value());
        IntVector m = av;
        for (std::size_t i = 0; i < m.entries.size(); ++i)
            m.entries[i] = std::max(av.entries[i], bv.entries[i]);
        return Effect(GroupElement(std::move(m)), alg);
    }
    return bound_search(a, b, /*meet=*/false);
}

MvReport is_mv_check(const AlgebraRef& algebra) {
    MvReport report;
    const auto elems = enumerate_effects(algebra);
    for (const auto& a : elems)
        for (const auto& b : elems) {
            const auto m = lattice_meet(a, b);
            const auto j = lattice_join(a, b);
            if (!m || !j) {
                report.pass = false;
                report.is_lattice = false;
                report.pair = {a.value(), b.value()};
                report.detail = "no unique meet/join";
                return report;
            }
            // (a v b) (-) a  vs  b (-) (a ^ b); both sides always defined
            const auto lhs = ominus(*j, a);
            const auto rhs = ominus(b, *m);
            if (!lhs || !rhs || !effect_equal(*lhs, *rhs)) {
                report.pass = false;
                report.is_lattice = true;
                report.pair = {a.value(), b.value()};
                report.detail = "MV identity (a v b) - a = b - (a ^ b) fails";
                return report;
            }
        }
    report.pass = true;
    report.is_lattice = true;
    return report;
}

// ---------------------------------------------------------------------------
// Morphisms

EAMorphism::EAMorphism(AlgebraRef source, AlgebraRef target,
                       std::vector<Effect> domain, std::vector<Effect> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      domain_(std::move(domain)),
      images_(std::move(images)) {
    if (domain_.size() != images_.size())
        throw Error("morphism table must pair every source element with an image");
    const auto elems = enumerate_effects(source_);
    if (elems.size() != domain_.size())
        throw Error("morphism table must be total on the finite source");
    for (std::size_t i = 0; i < elems.size(); ++i) {
        bool found = false;
        for (const auto& d : domain_)
            if (effect_equal(d, elems[i])) {
                found = true;
                break;
            }
        if (!found) throw Error("morphism table is missing a source element");
    }
}

EAMorphism EAMorphism::from_function(const AlgebraRef& source, const AlgebraRef& target,
                                     const std::function<Effect(const Effect&)>& fn) {
    std::vector<Effect> domain = enumerate_effects(source);
    std::vector<Effect> images;
    images.reserve(domain.size());
    for (const auto& e : domain) images.push_back(fn(e));
    return EAMorphism(source, target, std::move(domain), std::move(images));
}

EAMorphism EAMorphism::identity(const AlgebraRef& algebra) {
    return from_function(algebra, algebra, [](const Effect& e) { return e; });
}

const Effect& EAMorphism::apply(const Effect& e) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (effect_equal(domain_[i], e)) return images_[i];
    throw Error("effect not in the morphism's domain");
}

MorphismReport morphism_check(const EAMorphism& phi) {
    MorphismReport report;
    const auto& src = phi.source();
    // EM1
    const Effect img_unit = phi.apply(unit_effect(src));
    if (!effect_equal(img_unit, unit_effect(phi.target())))
        report.violations.push_back({"EM1", std::nullopt, "phi(1) != 1"});
    // EM2 over all orthogonal pairs
    for (const auto& a : phi.domain())
        for (const auto& b : phi.domain()) {
            const auto ab = oplus(a, b);
            if (!ab) continue;
            const auto img_sum = oplus(phi.apply(a), phi.apply(b));
            if (!img_sum) {
                report.violations.push_back(
                    {"EM2", {{a.value(), b.value()}}, "phi(a) not perp phi(b)"});
            } else if (!effect_equal(*img_sum, phi.apply(*ab))) {
                report.violations.push_back(
                    {"EM2", {{a.value(), b.value()}}, "phi(a (+) b) != phi(a) (+) phi(b)"});
            }
        }
    report.pass = report.violations.empty();
    return report;
}

MorphismReport morphism_consequences_check(const EAMorphism& phi) {
    MorphismReport report;
    const auto& src = phi.source();
    if (!effect_equal(phi.apply(zero_effect(src)), zero_effect(phi.target())))
        report.violations.push_back({"zero", std::nullopt, "phi(0) != 0"});
    for (const auto& a : phi.domain()) {
        if (!effect_equal(phi.apply(orthosupplement(a)), orthosupplement(phi.apply(a))))
            report.violations.push_back({"orthosupplement", {{a.value(), a.value()}},
                                         "phi(a') != phi(a)'"});
        for (const auto& b : phi.domain()) {
            if (leq_effects(a, b) && !leq_effects(phi.apply(a), phi.apply(b)))
                report.violations.push_back({"isotone", {{a.value(), b.value()}},
                                             "a <= b but phi(a) !<= phi(b)"});
            const auto diff = ominus(b, a);
            if (diff) {
                const auto img_diff = ominus(phi.apply(b), phi.apply(a));
                if (!img_diff || !effect_equal(*img_diff, phi.apply(*diff)))
                    report.violations.push_back({"ominus", {{a.value(), b.value()}},
                                                 "phi(b (-) a) != phi(b) (-) phi(a)"});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

bool decomposition_check(const AlgebraRef& algebra, const std::vector<Effect>& parts) {
    if (parts.empty()) throw Error("decomposition requires at least one part");
    GroupElement acc = zero_element(algebra->group());
    for (const auto& p : parts) {
        if (!same_algebra(p.algebra(), algebra))
            throw GroupMismatch("decomposition part from a different algebra");
        acc = add(acc, p.value());
        // sanity: partial sums of a decomposition never leave the interval
        if (!leq(algebra->group(), acc, algebra->unit())) return false;
    }
    return equals(algebra->group(), acc, algebra->unit());
}

// ---------------------------------------------------------------------------
// Finite Boolean algebras

FiniteBooleanAlgebra::FiniteBooleanAlgebra(int n) : ground_size(n) {
    if (n < 1) throw Error("Boolean algebra requires a nonempty ground set");
    if (n > kMaxGroundBits) throw SizeExceeded("Boolean algebra ground set too large");
}

AlgebraRef FiniteBooleanAlgebra::interval_algebra() const {
    Group g{IntVectorGroup::coordinatewise(ground_size)};
    IntVector u(std::vector<Int>(static_cast<std::size_t>(ground_size), 1));
    return make_algebra(std::move(g), GroupElement(std::move(u)));
}

Effect FiniteBooleanAlgebra::element_effect(const AlgebraRef& algebra, SubsetKey x) const {
    IntVector v(std::vector<Int>(static_cast<std::size_t>(ground_size), 0));
    for (int i = 0; i < ground_size; ++i)
        if (x & (SubsetKey{1} << i)) v.entries[static_cast<std::size_t>(i)] = 1;
    return make_effect(algebra, GroupElement(std::move(v)));
}

}  // namespace coex

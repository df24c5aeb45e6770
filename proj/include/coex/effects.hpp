#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coex/group.hpp"
#include "coex/subsets.hpp"

namespace coex {

/**
 * Interval effect algebras [0, u] over an ordered carrier: the partial
 * operations, enumeration of finite models, lattice/MV diagnostics,
 * morphisms, and finite Boolean algebras.
 */

class IntervalEffectAlgebra;
using AlgebraRef = std::shared_ptr<const IntervalEffectAlgebra>;

/// A validated group element with 0 <= value <= u, tagged with its algebra.
class Effect {
public:
    Effect(GroupElement value, AlgebraRef algebra);

    const GroupElement& value() const { return value_; }
    const AlgebraRef& algebra() const { return algebra_; }

private:
    GroupElement value_;
    AlgebraRef algebra_;
};

class IntervalEffectAlgebra {
public:
    explicit IntervalEffectAlgebra(UnitalGroup ambient) : ambient_(std::move(ambient)) {}

    const UnitalGroup& ambient() const { return ambient_; }
    const Group& group() const { return ambient_.group; }
    const GroupElement& unit() const { return ambient_.unit; }

    /// equals enumerate_effects output when present; filled by with_element_cache
    const std::optional<std::vector<GroupElement>>& element_cache() const { return cache_; }

    bool operator==(const IntervalEffectAlgebra& o) const { return ambient_ == o.ambient_; }

private:
    friend AlgebraRef with_element_cache(const AlgebraRef&);

    UnitalGroup ambient_;
    std::optional<std::vector<GroupElement>> cache_;
};

AlgebraRef make_algebra(UnitalGroup ambient);
AlgebraRef make_algebra(Group group, GroupElement unit);

/// Copy of the algebra with the finite element list precomputed.
AlgebraRef with_element_cache(const AlgebraRef& algebra);

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b);
void require_same_algebra(const Effect& a, const Effect& b);
bool effect_equal(const Effect& a, const Effect& b);

/// Validates 0 <= x <= u; throws OutOfInterval otherwise.
Effect make_effect(const AlgebraRef& algebra, GroupElement x);
std::optional<Effect> try_make_effect(const AlgebraRef& algebra, GroupElement x);

Effect zero_effect(const AlgebraRef& algebra);
Effect unit_effect(const AlgebraRef& algebra);

/// a (+) b, defined iff a + b <= u. nullopt signals a not perpendicular to b.
std::optional<Effect> oplus(const Effect& a, const Effect& b);

/// b (-) a, defined iff a <= b.
std::optional<Effect> ominus(const Effect& b, const Effect& a);

/// a' = u - a; the unique element with a (+) a' = 1.
Effect orthosupplement(const Effect& a);

bool is_perp(const Effect& a, const Effect& b);
bool leq_effects(const Effect& a, const Effect& b);

/// All x with 0 <= x <= u, deduplicated, ordered lexicographically.
/// Integer carriers only; UnsupportedCarrier for Hermitian groups.
std::vector<Effect> enumerate_effects(const AlgebraRef& algebra,
                                      std::size_t max_elements = 200000);

/// Greatest lower / least upper bound within the finite algebra.
/// nullopt: no unique bound exists (the algebra is not a lattice there).
std::optional<Effect> lattice_meet(const Effect& a, const Effect& b);
std::optional<Effect> lattice_join(const Effect& a, const Effect& b);

struct MvReport {
    bool pass = false;
    bool is_lattice = false;
    // first counterexample, when failing
    std::optional<std::pair<GroupElement, GroupElement>> pair;
    std::string detail;
};

/// Checks the lattice property and (a v b) (-) a = b (-) (a ^ b) for all pairs.
MvReport is_mv_check(const AlgebraRef& algebra);

/// A total table from a finite source algebra into a target algebra.
class EAMorphism {
public:
    EAMorphism(AlgebraRef source, AlgebraRef target,
               std::vector<Effect> domain, std::vector<Effect> images);

    static EAMorphism from_function(const AlgebraRef& source, const AlgebraRef& target,
                                    const std::function<Effect(const Effect&)>& fn);
    static EAMorphism identity(const AlgebraRef& algebra);

    const AlgebraRef& source() const { return source_; }
    const AlgebraRef& target() const { return target_; }
    const std::vector<Effect>& domain() const { return domain_; }
    const std::vector<Effect>& images() const { return images_; }

    const Effect& apply(const Effect& e) const;

private:
    AlgebraRef source_;
    AlgebraRef target_;
    std::vector<Effect> domain_;  // enumerate_effects(source) order
    std::vector<Effect> images_;
};

struct MorphismViolation {
    std::string condition;  // "EM1" or "EM2"
    std::optional<std::pair<GroupElement, GroupElement>> pair;
    std::string detail;
};

struct MorphismReport {
    bool pass = false;
    std::vector<MorphismViolation> violations;
};

/// EM1: phi(1) = 1. EM2: for a perp b, phi(a) perp phi(b) and
/// phi(a (+) b) = phi(a) (+) phi(b). Exhaustive over the finite source.
MorphismReport morphism_check(const EAMorphism& phi);

/// Consequences of EM1+EM2: isotone, preserves 0, ', and (-).
/// Used as a cross-check on morphisms that pass morphism_check.
MorphismReport morphism_consequences_check(const EAMorphism& phi);

/// True iff the group sum of parts equals u (every prefix sum is asserted
/// to stay below u along the way; associativity makes the order irrelevant).
bool decomposition_check(const AlgebraRef& algebra, const std::vector<Effect>& parts);

/// Subsets of a finite ground set, encoded as bitmasks.
struct FiniteBooleanAlgebra {
    int ground_size = 0;

    explicit FiniteBooleanAlgebra(int n);

    SubsetKey top() const { return full_mask(ground_size); }
    SubsetKey complement(SubsetKey x) const { return top() & ~x; }

    /// The same Boolean algebra as an interval algebra over Z^n with u = (1,..,1).
    AlgebraRef interval_algebra() const;
    Effect element_effect(const AlgebraRef& algebra, SubsetKey x) const;
};

}  // namespace coex

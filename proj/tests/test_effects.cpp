#include "doctest.h"

#include <algorithm>
#include <set>

#include "coex/effects.hpp"
#include "coex/fixtures.hpp"

using namespace coex;
namespace fx = coex::fixtures;

namespace {

std::vector<Int> entries(const Effect& e) { return std::get<IntVector>(e.value()).entries; }

// test-local exhaustive meet; the production coordinatewise path is a
// closed form, this is the enumeration route
std::optional<Effect> meet_by_enumeration(const Effect& a, const Effect& b) {
    std::vector<Effect> lower;
    for (const auto& z : enumerate_effects(a.algebra()))
        if (leq_effects(z, a) && leq_effects(z, b)) lower.push_back(z);
    for (const auto& candidate : lower) {
        bool greatest = true;
        for (const auto& z : lower)
            if (!leq_effects(z, candidate)) {
                greatest = false;
                break;
            }
        if (greatest) return candidate;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("make_effect validates the interval") {
    const auto chain = fx::chain4();
    CHECK(entries(fx::int_effect(chain, {2})) == std::vector<Int>{2});
    CHECK_THROWS_AS(fx::int_effect(chain, {4}), OutOfInterval);
    CHECK_THROWS_AS(fx::int_effect(chain, {-1}), OutOfInterval);
    const auto penta = fx::penta();
    CHECK_NOTHROW(fx::int_effect(penta, {1, 1}));
    CHECK_THROWS_AS(fx::int_effect(penta, {2, 1}), OutOfInterval);
}

TEST_CASE("oplus is defined exactly on orthogonal pairs") {
    const auto chain = fx::chain4();
    const auto sum = oplus(fx::int_effect(chain, {1}), fx::int_effect(chain, {2}));
    REQUIRE(sum);
    CHECK(entries(*sum) == std::vector<Int>{3});
    CHECK_FALSE(oplus(fx::int_effect(chain, {2}), fx::int_effect(chain, {2})));

    const auto penta = fx::penta();
    // u - ((1,0)+(1,1)) = (0,1) is not in the cone
    CHECK_FALSE(oplus(fx::int_effect(penta, {1, 0}), fx::int_effect(penta, {1, 1})));

    const auto bool2 = fx::bool2();
    const auto top = oplus(fx::int_effect(bool2, {1, 0}), fx::int_effect(bool2, {0, 1}));
    REQUIRE(top);
    CHECK(entries(*top) == std::vector<Int>{1, 1});
}

TEST_CASE("ominus, orthosupplement, is_perp") {
    const auto chain = fx::chain4();
    const auto diff = ominus(fx::int_effect(chain, {3}), fx::int_effect(chain, {1}));
    REQUIRE(diff);
    CHECK(entries(*diff) == std::vector<Int>{2});
    CHECK_FALSE(ominus(fx::int_effect(chain, {1}), fx::int_effect(chain, {3})));

    const auto penta = fx::penta();
    CHECK(entries(orthosupplement(fx::int_effect(penta, {1, 0}))) == std::vector<Int>{1, 2});
    CHECK_FALSE(is_perp(fx::int_effect(chain, {2}), fx::int_effect(chain, {2})));
}

TEST_CASE("enumeration of the bundled fixtures") {
    CHECK(enumerate_effects(fx::chain4()).size() == 4);
    CHECK(enumerate_effects(fx::bool2()).size() == 4);
    CHECK(enumerate_effects(fx::c2xc3()).size() == 6);

    const auto penta_elems = enumerate_effects(fx::penta());
    std::set<std::vector<Int>> got;
    for (const auto& e : penta_elems) got.insert(entries(e));
    const std::set<std::vector<Int>> expected{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 2}};
    CHECK(got == expected);

    CHECK_THROWS_AS(enumerate_effects(fx::qubit()), UnsupportedCarrier);
}

TEST_CASE("element cache reproduces enumeration") {
    const auto cached = with_element_cache(fx::penta());
    REQUIRE(cached->element_cache());
    CHECK(cached->element_cache()->size() == 5);
    CHECK(enumerate_effects(cached).size() == 5);
}

TEST_CASE("effect algebra axioms hold on every finite fixture") {
    for (const auto& alg : {fx::chain4(), fx::bool2(), fx::c2xc3(), fx::penta()}) {
        const auto elems = enumerate_effects(alg);
        for (const auto& a : elems) {
            // E3: exactly one a' with a + a' = 1
            std::size_t supplements = 0;
            for (const auto& b : elems) {
                const auto sum = oplus(a, b);
                if (sum && effect_equal(*sum, unit_effect(alg))) ++supplements;
            }
            CHECK(supplements == 1);
            CHECK(effect_equal(*oplus(a, orthosupplement(a)), unit_effect(alg)));
            // E4: a + 1 defined forces a = 0
            if (is_perp(a, unit_effect(alg))) CHECK(effect_equal(a, zero_effect(alg)));
            for (const auto& b : elems) {
                // E1: commutativity
                const auto ab = oplus(a, b);
                const auto ba = oplus(b, a);
                CHECK(ab.has_value() == ba.has_value());
                if (ab) CHECK(effect_equal(*ab, *ba));
                // orthogonality criterion: a perp b iff a <= b' iff b <= a'
                CHECK(is_perp(a, b) == leq_effects(a, orthosupplement(b)));
                CHECK(is_perp(a, b) == leq_effects(b, orthosupplement(a)));
                // E2: associativity
                for (const auto& c : elems) {
                    const auto bc = oplus(b, c);
                    if (ab && bc) {
                        const auto left = oplus(*ab, c);
                        const auto right = oplus(a, *bc);
                        CHECK(left.has_value() == right.has_value());
                        if (left) CHECK(effect_equal(*left, *right));
                    }
                }
            }
        }
    }
}

TEST_CASE("lattice meet and join") {
    const auto c23 = fx::c2xc3();
    const auto m = lattice_meet(fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}));
    REQUIRE(m);
    CHECK(entries(*m) == std::vector<Int>{0, 0});
    const auto j = lattice_join(fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}));
    REQUIRE(j);
    CHECK(entries(*j) == std::vector<Int>{1, 2});

    const auto penta = fx::penta();
    const auto pm = lattice_meet(fx::int_effect(penta, {1, 0}), fx::int_effect(penta, {1, 1}));
    REQUIRE(pm);
    CHECK(entries(*pm) == std::vector<Int>{0, 0});
}

TEST_CASE("coordinatewise meet closed form agrees with enumeration") {
    const auto c23 = fx::c2xc3();
    const auto elems = enumerate_effects(c23);
    for (const auto& a : elems)
        for (const auto& b : elems) {
            const auto fast = lattice_meet(a, b);
            const auto slow = meet_by_enumeration(a, b);
            REQUIRE(fast);
            REQUIRE(slow);
            CHECK(effect_equal(*fast, *slow));
        }
}

TEST_CASE("MV diagnostics") {
    CHECK(is_mv_check(fx::c2xc3()).pass);
    CHECK(is_mv_check(fx::bool2()).pass);
    CHECK(is_mv_check(fx::chain4()).pass);

    const auto report = is_mv_check(fx::penta());
    CHECK_FALSE(report.pass);
    CHECK(report.is_lattice);  // the pentagon is a lattice, just not MV
    REQUIRE(report.pair);
    CHECK(std::get<IntVector>(report.pair->first).entries == std::vector<Int>{1, 0});
    CHECK(std::get<IntVector>(report.pair->second).entries == std::vector<Int>{1, 1});
}

TEST_CASE("morphism checks") {
    const auto chain = fx::chain4();
    const auto identity = EAMorphism::identity(chain);
    CHECK(morphism_check(identity).pass);
    CHECK(morphism_consequences_check(identity).pass);

    // doubling [0,3] -> [0,6]
    const auto chain7 = make_algebra(Group{IntVectorGroup::coordinatewise(1)},
                                     GroupElement{IntVector({6})});
    const auto doubling = EAMorphism::from_function(chain, chain7, [&](const Effect& e) {
        return make_effect(chain7, scalar_multiply(2, e.value()));
    });
    CHECK(morphism_check(doubling).pass);
    CHECK(morphism_consequences_check(doubling).pass);

    const auto constant_zero = EAMorphism::from_function(
        chain, chain, [&](const Effect&) { return zero_effect(chain); });
    const auto report = morphism_check(constant_zero);
    CHECK_FALSE(report.pass);
    REQUIRE_FALSE(report.violations.empty());
    CHECK(report.violations.front().condition == "EM1");

    // collapsing morphism C2xC3 -> CHAIN4, (a,b) |-> a + b
    const auto collapse = EAMorphism::from_function(fx::c2xc3(), chain, [&](const Effect& e) {
        const auto& v = std::get<IntVector>(e.value());
        return fx::int_effect(chain, {v.entries[0] + v.entries[1]});
    });
    CHECK(morphism_check(collapse).pass);
    CHECK(morphism_consequences_check(collapse).pass);
}

TEST_CASE("decomposition check") {
    const auto chain = fx::chain4();
    CHECK(decomposition_check(chain, {fx::int_effect(chain, {1}), fx::int_effect(chain, {1}),
                                      fx::int_effect(chain, {1})}));
    CHECK_FALSE(
        decomposition_check(chain, {fx::int_effect(chain, {2}), fx::int_effect(chain, {2})}));
    const auto penta = fx::penta();
    CHECK(decomposition_check(penta, {fx::int_effect(penta, {1, 1}),
                                      fx::int_effect(penta, {1, 1})}));
    CHECK_THROWS_AS(decomposition_check(chain, {}), Error);
}

TEST_CASE("finite Boolean algebra as an interval algebra") {
    const FiniteBooleanAlgebra boolean(3);
    const auto alg = boolean.interval_algebra();
    CHECK(enumerate_effects(alg).size() == 8);
    const auto e = boolean.element_effect(alg, 0b101);
    CHECK(entries(e) == std::vector<Int>{1, 0, 1});
    CHECK(boolean.complement(0b101) == 0b010);
    CHECK_THROWS_AS(FiniteBooleanAlgebra(0), Error);
}

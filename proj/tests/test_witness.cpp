#include "doctest.h"

#include <random>

#include "coex/canonical.hpp"
#include "coex/fixtures.hpp"
#include "coex/witness.hpp"

using namespace coex;
namespace fx = coex::fixtures;

namespace {

std::vector<Int> entries(const GroupElement& x) { return std::get<IntVector>(x).entries; }

// direct-route oracle: iterate every Z over the full key range and filter
// X <= Z <= A, applying the signed sum definition verbatim
GroupElement d_sum_oracle(const BetaTable& beta, SubsetKey x, SubsetKey a) {
    const Group& g = beta.algebra()->group();
    GroupElement acc = zero_element(g);
    for (SubsetKey z = 0; z < (SubsetKey{1} << beta.ground_size()); ++z) {
        if (!subset_of(x, z) || !subset_of(z, a)) continue;
        const int sign = mobius_mu(x, z);
        acc = sign > 0 ? add(acc, beta.at(z).value()) : subtract(acc, beta.at(z).value());
    }
    return acc;
}

GroundSet chain_ground(const AlgebraRef& chain, std::vector<Int> values) {
    std::vector<Effect> elems;
    for (Int v : values) elems.push_back(fx::int_effect(chain, {v}));
    return GroundSet(chain, elems);
}

BetaTable chain_pair_table(const AlgebraRef& chain, Int a, Int b, Int top) {
    return BetaTable::from_upper_values(chain_ground(chain, {a, b}),
                                        {fx::int_effect(chain, {top})});
}

BetaTable random_chain_table(const AlgebraRef& chain, std::mt19937& rng) {
    // arbitrary values everywhere, including the empty set and singletons
    std::uniform_int_distribution<Int> value(0, 3);
    GroundSet ground = chain_ground(chain, {1, 2, 3});
    std::vector<Effect> values;
    for (SubsetKey key = 0; key < 8; ++key)
        values.push_back(fx::int_effect(chain, {value(rng)}));
    return BetaTable(std::move(ground), std::move(values));
}

}  // namespace

TEST_CASE("ground sets demand distinct elements") {
    const auto chain = fx::chain4();
    CHECK_NOTHROW(chain_ground(chain, {1, 2}));
    CHECK_THROWS_AS(chain_ground(chain, {1, 1}), Error);
}

TEST_CASE("mobius function of the subset lattice") {
    CHECK(mobius_mu(0b11, 0b11) == 1);
    CHECK(mobius_mu(0b01, 0b11) == -1);
    CHECK(mobius_mu(0b00, 0b111) == -1);
    CHECK_THROWS_AS(mobius_mu(0b10, 0b01), NotComparable);

    // sum over X <= Z <= Y of mu(X, Z) is the Kronecker delta
    const SubsetKey x = 0b0001;
    const SubsetKey y = 0b1111;  // |Y \ X| = 3
    int sum = 0;
    for_each_submask(y & ~x, [&](SubsetKey extra) { sum += mobius_mu(x, x | extra); });
    CHECK(sum == 0);
    int self = 0;
    for_each_submask(SubsetKey{0}, [&](SubsetKey) { self += 1; });
    CHECK(self == 1);
}

TEST_CASE("d_value on the four-element chain") {
    const auto chain = fx::chain4();
    SUBCASE("beta({1,2}) = 0") {
        const auto beta = chain_pair_table(chain, 1, 2, 0);
        CHECK(entries(d_value(beta, 0b00, 0b11)) == std::vector<Int>{0});  // 3-1-2+0
        CHECK(entries(d_value(beta, 0b01, 0b01)) == std::vector<Int>{1});  // D(X,X)=beta(X)
    }
    SUBCASE("beta({1,2}) = 1") {
        const auto beta = chain_pair_table(chain, 1, 2, 1);
        CHECK(entries(d_value(beta, 0b01, 0b11)) == std::vector<Int>{0});  // 1-1
        CHECK(entries(d_value(beta, 0b00, 0b11)) == std::vector<Int>{1});  // 3-1-2+1
    }
    CHECK_THROWS_AS(d_value(chain_pair_table(chain, 1, 2, 0), 0b10, 0b01), NotComparable);
}

TEST_CASE("d_value, the recurrence and the direct-sum oracle coincide") {
    const auto chain = fx::chain4();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto beta = random_chain_table(chain, rng);
        for_each_submask(beta.ground().all(), [&](SubsetKey a) {
            for_each_submask(a, [&](SubsetKey x) {
                const auto direct = d_value(beta, x, a);
                CHECK(entries(direct) == entries(d_value_rec(beta, x, a)));
                CHECK(entries(direct) == entries(d_sum_oracle(beta, x, a)));
            });
        });
    }
}

TEST_CASE("recurrence matches on the meet witness over C2xC3") {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    const auto beta = meet_witness(c23, S);
    for_each_submask(S.all(), [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            CHECK(entries(d_value(beta, x, a)) == entries(d_value_rec(beta, x, a)));
        });
    });
}

TEST_CASE("recurrence matches within 1e-12 on a Hermitian witness") {
    const auto qubit = fx::qubit();
    GroundSet S(qubit,
                {make_effect(qubit, GroupElement{HermitianMatrix::diagonal({0.3, 0.9})}),
                 make_effect(qubit, GroupElement{HermitianMatrix::diagonal({0.7, 0.2})}),
                 make_effect(qubit, GroupElement{HermitianMatrix::diagonal({0.5, 0.6})})});
    const auto beta = product_witness(S);
    for_each_submask(S.all(), [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            const auto direct = std::get<HermitianMatrix>(d_value(beta, x, a));
            const auto recursive = std::get<HermitianMatrix>(d_value_rec(beta, x, a));
            CHECK(hm_max_abs_diff(direct, recursive) <= 1e-12);
        });
    });
}

TEST_CASE("verified witnesses satisfy 0 <= D(X,A) <= beta(X) <= 1") {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    const auto beta = meet_witness(c23, S);
    REQUIRE(verify_witness(beta).pass);
    const Group& g = c23->group();
    for_each_submask(S.all(), [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            const auto d = d_value(beta, x, a);
            CHECK(is_positive(g, d));
            CHECK(leq(g, d, beta.at(x).value()));
            CHECK(leq(g, beta.at(x).value(), c23->unit()));
        });
    });
}

TEST_CASE("d_table sizes are 3^|S|") {
    const auto chain = fx::chain4();
    CHECK(d_table(chain_pair_table(chain, 1, 2, 0)).size() == 9);

    const auto empty_ground = BetaTable(GroundSet(chain, {}), {unit_effect(chain)});
    const auto table0 = d_table(empty_ground);
    CHECK(table0.size() == 1);
    CHECK(entries(table0.at(0, 0)) == std::vector<Int>{3});

    const auto beta3 = BetaTable::from_upper_values(
        chain_ground(chain, {1, 2, 3}),
        {zero_effect(chain), zero_effect(chain), zero_effect(chain), zero_effect(chain)});
    CHECK(d_table(beta3).size() == 27);
    CHECK_THROWS_AS(d_table(beta3, 2), SizeExceeded);
}

TEST_CASE("verify_witness accepts the meet witness and flags bad tables") {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    const auto report = verify_witness(meet_witness(c23, S));
    CHECK(report.pass);
    CHECK(report.d_leq_one);
    CHECK(report.pairs_checked == 27);

    // PENTA pair with beta(S) = 0: (A3) fails at (empty, S) with value (0,1)
    const auto penta = fx::penta();
    GroundSet P(penta, {fx::int_effect(penta, {1, 0}), fx::int_effect(penta, {1, 1})});
    const auto bad = BetaTable::from_upper_values(P, {zero_effect(penta)});
    const auto bad_report = verify_witness(bad);
    CHECK_FALSE(bad_report.pass);
    REQUIRE(bad_report.violations.size() == 1);
    CHECK(bad_report.violations[0].axiom == Axiom::A3);
    CHECK(bad_report.violations[0].X == 0);
    CHECK(bad_report.violations[0].A == 0b11);
    CHECK(entries(bad_report.violations[0].value) == std::vector<Int>{0, 1});

    // beta(empty) != 1 is an (A1) violation
    const auto chain = fx::chain4();
    GroundSet C(chain, {fx::int_effect(chain, {1})});
    const auto a1_bad =
        BetaTable(GroundSet(chain, C.elements()),
                  {fx::int_effect(chain, {2}), fx::int_effect(chain, {1})});
    const auto a1_report = verify_witness(a1_bad);
    CHECK_FALSE(a1_report.pass);
    bool found_a1 = false;
    for (const auto& v : a1_report.violations) found_a1 |= (v.axiom == Axiom::A1);
    CHECK(found_a1);
}

TEST_CASE("moebius inversion identity holds for arbitrary tables") {
    const auto chain = fx::chain4();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto beta = random_chain_table(chain, rng);
        for_each_submask(beta.ground().all(), [&](SubsetKey a) {
            for_each_submask(a, [&](SubsetKey x) { CHECK(beta_recovery_check(beta, x, a)); });
        });
    }
}

TEST_CASE("partition identity") {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    const auto beta = meet_witness(c23, S);

    // C = empty: trivially true
    CHECK(partition_check(beta, 0b01, 0b01, 0));
    // X = A = empty, C = S: the full decomposition of unit sums to beta(empty)
    CHECK(partition_check(beta, 0, 0, S.all(), /*require_positive=*/true));
    // |C| = 2
    CHECK(partition_check(beta, 0b001, 0b001, 0b110, /*require_positive=*/true));
    // every admissible triple
    for_each_submask(S.all(), [&](SubsetKey a) {
        for_each_submask(a, [&](SubsetKey x) {
            for_each_submask(S.all() & ~a, [&](SubsetKey c) {
                CHECK(partition_check(beta, x, a, c, true));
            });
        });
    });
    CHECK_THROWS_AS(partition_check(beta, 0b001, 0b001, 0b001), Error);
}

TEST_CASE("structural properties of verified witnesses") {
    const auto c23 = fx::c2xc3();
    SUBCASE("ground set containing 0 and 1") {
        GroundSet S(c23, {zero_effect(c23), fx::int_effect(c23, {1, 1}), unit_effect(c23)});
        const auto report = structural_properties(meet_witness(c23, S));
        CHECK(report.all_hold());
        for (const auto& r : report.results) CHECK(r.status == PropertyStatus::Pass);
    }
    SUBCASE("ground set with neither 0 nor 1") {
        GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2})});
        const auto report = structural_properties(meet_witness(c23, S));
        CHECK(report.all_hold());
        int not_applicable = 0;
        for (const auto& r : report.results)
            if (r.status == PropertyStatus::NotApplicable) ++not_applicable;
        CHECK(not_applicable == 3);  // zero_absorption, unit_extension, unit_d_zero
    }
    SUBCASE("unverified tables are rejected") {
        const auto penta = fx::penta();
        GroundSet P(penta, {fx::int_effect(penta, {1, 0}), fx::int_effect(penta, {1, 1})});
        const auto bad = BetaTable::from_upper_values(P, {zero_effect(penta)});
        CHECK_THROWS_AS(structural_properties(bad), UnverifiedWitness);
    }
}

TEST_CASE("pushforward along morphisms") {
    const auto chain = fx::chain4();
    GroundSet S(chain, {fx::int_effect(chain, {1}), fx::int_effect(chain, {2})});
    const auto beta = meet_witness(chain, S);  // beta({1,2}) = 1

    SUBCASE("identity morphism keeps the table") {
        const auto pushed = pushforward(beta, EAMorphism::identity(chain));
        CHECK(pushed.ground_size() == 2);
        for (SubsetKey key = 0; key < 4; ++key)
            CHECK(effect_equal(pushed.at(key), beta.at(key)));
    }

    SUBCASE("doubling morphism rescales the table") {
        const auto chain7 = make_algebra(Group{IntVectorGroup::coordinatewise(1)},
                                         GroupElement{IntVector({6})});
        const auto doubling = EAMorphism::from_function(chain, chain7, [&](const Effect& e) {
            return make_effect(chain7, scalar_multiply(2, e.value()));
        });
        const auto pushed = pushforward(beta, doubling);
        CHECK(pushed.ground_size() == 2);
        CHECK(entries(pushed.ground().element(0).value()) == std::vector<Int>{2});
        CHECK(entries(pushed.ground().element(1).value()) == std::vector<Int>{4});
        CHECK(entries(pushed.at(0b11).value()) == std::vector<Int>{2});  // 2 * min(1,2)
        CHECK(verify_witness(pushed).pass);
    }

    SUBCASE("collapsing morphism shrinks the ground set") {
        const auto c23 = fx::c2xc3();
        GroundSet S2(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 1})});
        const auto beta2 = meet_witness(c23, S2);
        const auto collapse =
            EAMorphism::from_function(c23, chain, [&](const Effect& e) {
                const auto& v = std::get<IntVector>(e.value());
                return fx::int_effect(chain, {v.entries[0] + v.entries[1]});
            });
        const auto pushed = pushforward(beta2, collapse);
        CHECK(pushed.ground_size() == 1);  // both elements map to 1
        CHECK(pushed.values().size() == 2);
        CHECK(verify_witness(pushed).pass);
    }

    SUBCASE("explicit sections are validated") {
        const auto identity = EAMorphism::identity(chain);
        const Section good{{fx::int_effect(chain, {1}), fx::int_effect(chain, {1})},
                           {fx::int_effect(chain, {2}), fx::int_effect(chain, {2})}};
        CHECK_NOTHROW(pushforward(beta, identity, good));
        const Section not_in_ground{{fx::int_effect(chain, {1}), fx::int_effect(chain, {3})},
                                    {fx::int_effect(chain, {2}), fx::int_effect(chain, {2})}};
        CHECK_THROWS_AS(pushforward(beta, identity, not_in_ground), InvalidSection);
        const Section wrong_image{{fx::int_effect(chain, {1}), fx::int_effect(chain, {2})},
                                  {fx::int_effect(chain, {2}), fx::int_effect(chain, {1})}};
        CHECK_THROWS_AS(pushforward(beta, identity, wrong_image), InvalidSection);
        const Section partial{{fx::int_effect(chain, {1}), fx::int_effect(chain, {1})}};
        CHECK_THROWS_AS(pushforward(beta, identity, partial), InvalidSection);
    }

    SUBCASE("pushforward of a verified witness verifies") {
        const auto c23 = fx::c2xc3();
        GroundSet S3(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {1, 2}),
                           fx::int_effect(c23, {0, 1})});
        const auto beta3 = meet_witness(c23, S3);
        REQUIRE(verify_witness(beta3).pass);
        const auto collapse =
            EAMorphism::from_function(c23, chain, [&](const Effect& e) {
                const auto& v = std::get<IntVector>(e.value());
                return fx::int_effect(chain, {v.entries[0] + v.entries[1]});
            });
        CHECK(verify_witness(pushforward(beta3, collapse)).pass);
    }
}

TEST_CASE("restriction to sub-ground-sets") {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    const auto beta = meet_witness(c23, S);

    const auto full = restrict_ground(beta, S.all());
    CHECK(full.ground_size() == 3);
    for (SubsetKey key = 0; key < 8; ++key) CHECK(effect_equal(full.at(key), beta.at(key)));

    const auto empty = restrict_ground(beta, 0);
    CHECK(empty.ground_size() == 0);
    CHECK(effect_equal(empty.at(0), unit_effect(c23)));

    const auto single = restrict_ground(beta, 0b010);
    CHECK(single.ground_size() == 1);
    CHECK(verify_witness(single).pass);
    CHECK(effect_equal(single.at(1), fx::int_effect(c23, {0, 2})));

    CHECK_THROWS_AS(restrict_ground(beta, 0b1000), NotComparable);
}

#include "doctest.h"

#include <fstream>
#include <sstream>

#include "coex/canonical.hpp"
#include "coex/fixtures.hpp"
#include "coex/json_io.hpp"

using namespace coex;
namespace fx = coex::fixtures;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BetaTable sample_meet_witness() {
    const auto c23 = fx::c2xc3();
    GroundSet S(c23, {fx::int_effect(c23, {1, 0}), fx::int_effect(c23, {0, 2}),
                      fx::int_effect(c23, {1, 1})});
    return meet_witness(c23, S);
}

}  // namespace

TEST_CASE("group documents round-trip") {
    for (const auto& name : fx::names()) {
        const auto algebra = fx::by_name(name);
        const Json j = algebra_to_json(algebra);
        const auto parsed = algebra_from_json(j);
        CHECK(*parsed == *algebra);
        CHECK(dump_canonical(algebra_to_json(parsed)) == dump_canonical(j));
    }
}

TEST_CASE("element parsing validates the carrier") {
    const auto penta = fx::penta();
    CHECK_THROWS_AS(element_from_json(Json::array({1, 2, 3}), penta->group()), ParseError);
    CHECK_THROWS_AS(element_from_json(Json::parse("[1.5, 2]"), penta->group()), ParseError);
    CHECK_THROWS_AS(element_from_json(Json::parse("{}"), penta->group()), ParseError);
    // bare integers are accepted for one-dimensional carriers
    const auto chain = fx::chain4();
    CHECK(std::get<IntVector>(element_from_json(Json(2), chain->group())).entries ==
          std::vector<Int>{2});

    const auto qubit = fx::qubit();
    CHECK_THROWS_AS(element_from_json(Json::parse("[[1,0],[0,1]]"), qubit->group()),
                    ParseError);
    const auto eye =
        element_from_json(Json::parse("[[[1,0],[0,0]],[[0,0],[1,0]]]"), qubit->group());
    CHECK(hm_max_abs_diff(std::get<HermitianMatrix>(eye), HermitianMatrix::identity(2)) == 0);
}

TEST_CASE("beta documents are byte-stable through a round trip") {
    const auto beta = sample_meet_witness();
    const std::string once = dump_canonical(beta_document(beta));
    const auto parsed = beta_document_parse(parse_json(once));
    CHECK(parsed.implied.empty());
    const std::string twice = dump_canonical(beta_document(parsed.table));
    CHECK(once == twice);

    // re-verification gives the identical report
    const auto r1 = verify_witness(beta);
    const auto r2 = verify_witness(parsed.table);
    CHECK(dump_canonical(witness_report_to_json(r1, beta)) ==
          dump_canonical(witness_report_to_json(r2, parsed.table)));
}

TEST_CASE("Hermitian documents are byte-stable despite float entries") {
    const auto qubit = fx::qubit();
    const double c = 0.6, s = 0.8;
    const auto conjugated = [&](double d0, double d1) {
        std::vector<Complex> e{Complex{c * c * d0 + s * s * d1, 0},
                               Complex{c * s * (d0 - d1), 0},
                               Complex{c * s * (d0 - d1), 0},
                               Complex{s * s * d0 + c * c * d1, 0}};
        return make_effect(qubit, GroupElement{HermitianMatrix::make(2, e)});
    };
    GroundSet S(qubit, {conjugated(1.0 / 3.0, 0.9), conjugated(0.123456789, 0.7)});
    const auto beta = product_witness(S);
    const std::string once = dump_canonical(beta_document(beta));
    const auto parsed = beta_document_parse(parse_json(once));
    CHECK(dump_canonical(beta_document(parsed.table)) == once);
    CHECK(verify_witness(parsed.table).pass);
}

TEST_CASE("implied entries are auto-filled from the axioms") {
    const auto c23 = fx::c2xc3();
    Json doc;
    doc["algebra"] = algebra_to_json(c23);
    doc["ground"] = Json::parse("[[1,0],[0,2]]");
    doc["beta"] = Json::parse(R"([{"subset":[0,1],"value":[0,0]}])");
    const auto parsed = beta_document_parse(doc);
    CHECK(parsed.implied.size() == 3);  // empty set and both singletons
    CHECK(effect_equal(parsed.table.at(0), unit_effect(c23)));
    CHECK(effect_equal(parsed.table.at(0b01), fx::int_effect(c23, {1, 0})));
    CHECK(verify_witness(parsed.table).pass);
}

TEST_CASE("malformed beta documents are rejected") {
    const auto c23 = fx::c2xc3();
    Json doc;
    doc["algebra"] = algebra_to_json(c23);
    doc["ground"] = Json::parse("[[1,0],[0,2]]");

    SUBCASE("missing upper entry") {
        doc["beta"] = Json::array();
        CHECK_THROWS_AS(beta_document_parse(doc), ParseError);
    }
    SUBCASE("duplicate entry") {
        doc["beta"] = Json::parse(
            R"([{"subset":[0,1],"value":[0,0]},{"subset":[1,0],"value":[0,0]}])");
        CHECK_THROWS_AS(beta_document_parse(doc), ParseError);
    }
    SUBCASE("subset index out of range") {
        doc["beta"] = Json::parse(R"([{"subset":[0,2],"value":[0,0]}])");
        CHECK_THROWS_AS(beta_document_parse(doc), ParseError);
    }
    SUBCASE("value outside the interval") {
        doc["beta"] = Json::parse(R"([{"subset":[0,1],"value":[5,5]}])");
        CHECK_THROWS_AS(beta_document_parse(doc), ParseError);
    }
    SUBCASE("duplicate ground elements") {
        doc["ground"] = Json::parse("[[1,0],[1,0]]");
        doc["beta"] = Json::parse(R"([{"subset":[0,1],"value":[0,0]}])");
        CHECK_THROWS_AS(beta_document_parse(doc), ParseError);
    }
    SUBCASE("truncated JSON text") {
        CHECK_THROWS_AS(parse_json(R"({"algebra": {"group")"), ParseError);
    }
}

TEST_CASE("morphism documents round-trip") {
    const auto chain = fx::chain4();
    const auto chain7 = make_algebra(Group{IntVectorGroup::coordinatewise(1)},
                                     GroupElement{IntVector({6})});
    const auto doubling = EAMorphism::from_function(chain, chain7, [&](const Effect& e) {
        return make_effect(chain7, scalar_multiply(2, e.value()));
    });
    const Json j = morphism_to_json(doubling);
    const auto parsed = morphism_from_json(j);
    CHECK(morphism_check(parsed).pass);
    CHECK(dump_canonical(morphism_to_json(parsed)) == dump_canonical(j));

    Json bad = j;
    bad["pairs"].erase(0);  // no longer total
    CHECK_THROWS_AS(morphism_from_json(bad), ParseError);
}

TEST_CASE("beta entries are emitted in canonical mask order") {
    const auto beta = sample_meet_witness();
    const Json doc = beta_document(beta);
    REQUIRE(doc.at("beta").size() == 8);
    // increasing mask order, each subset a sorted index list
    std::vector<std::vector<int>> subsets;
    for (const auto& entry : doc.at("beta"))
        subsets.push_back(entry.at("subset").get<std::vector<int>>());
    CHECK(subsets == std::vector<std::vector<int>>{
                         {}, {0}, {1}, {0, 1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}});
}

TEST_CASE("bundled fixture files match the built-in algebras") {
    const std::string dir = COEX_FIXTURE_DIR;
    const std::pair<const char*, const char*> files[] = {
        {"CHAIN4", "chain4.json"}, {"BOOL2", "bool2.json"}, {"C2xC3", "c2xc3.json"},
        {"PENTA", "penta.json"},   {"QUBIT", "qubit.json"},
    };
    for (const auto& [name, file] : files) {
        const auto parsed = algebra_from_json(parse_json(slurp(dir + "/" + file)));
        CHECK(*parsed == *fx::by_name(name));
    }
}

TEST_CASE("tolerances are echoed in reports") {
    const auto qubit = fx::qubit(1e-8);
    GroundSet S(qubit,
                {make_effect(qubit, GroupElement{HermitianMatrix::diagonal({0.5, 1.0})})});
    const auto beta = product_witness(S);
    const Json j = witness_report_to_json(verify_witness(beta), beta);
    CHECK(j.at("tolerances").at("psd_tolerance").get<double>() == 1e-8);
    CHECK(j.at("tolerances").at("equality").get<std::string>() == "tolerance-ball");

    const auto chain = fx::chain4();
    GroundSet SC(chain, {fx::int_effect(chain, {1})});
    const auto chain_beta = BetaTable::from_upper_values(SC, {});
    const Json jc = witness_report_to_json(verify_witness(chain_beta), chain_beta);
    CHECK(jc.at("tolerances").at("arithmetic").get<std::string>() == "exact");
}

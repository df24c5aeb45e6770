// Command-line front end: witness verification, coexistence certificates,
// the brute-force oracle harness, and the canonical witness constructions,
// all speaking the JSON formats of the library.
//
// Exit codes: 0 pass, 1 mathematical failure (violations / non-coexistent),
// 2 input error, 3 resource cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "coex/fixtures.hpp"
#include "coex/json_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapExceeded = 3;

struct ToleranceFlags {
    std::optional<double> psd;
    std::optional<double> eq;
};

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& flags) {
    cmd->add_option("--psd-tol", flags.psd, "PSD eigenvalue tolerance (Hermitian carriers)");
    cmd->add_option("--eq-tol", flags.eq, "entrywise equality tolerance (Hermitian carriers)");
}

int ground_cap_default() {
    if (const char* env = std::getenv("COEX_MAX_GROUND")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw coex::ParseError("COEX_MAX_GROUND must be an integer");
        }
    }
    return coex::kDefaultGroundCap;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw coex::ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

coex::Json load_json_arg(const std::string& arg) {
    // inline JSON is accepted alongside file paths
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos &&
        (arg[first] == '{' || arg[first] == '[' || std::isdigit(arg[first]) ||
         arg[first] == '-'))
        return coex::parse_json(arg);
    return coex::parse_json(read_file(arg));
}

/// Algebra argument: a bundled fixture name or a JSON document (inline/file).
coex::AlgebraRef load_algebra_arg(const std::string& arg, const ToleranceFlags& flags) {
    coex::AlgebraRef algebra;
    if (coex::fixtures::is_fixture_name(arg)) {
        algebra = coex::fixtures::by_name(arg);
    } else {
        algebra = coex::algebra_from_json(load_json_arg(arg));
    }
    if ((flags.psd || flags.eq) && !algebra->group().is_integer()) {
        const auto& h = algebra->group().hermitian_group();
        const double psd = flags.psd.value_or(h.psd_tolerance);
        // equality follows the PSD knob unless --eq-tol pins it separately
        const double eq = flags.eq.value_or(psd == h.psd_tolerance ? h.eq_tolerance : psd);
        algebra = coex::make_algebra(
            coex::Group{coex::HermitianGroup::make(h.dimension, psd, eq)}, algebra->unit());
    }
    return algebra;
}

coex::ParsedBetaDocument load_beta_document(const std::string& arg,
                                            const ToleranceFlags& flags) {
    coex::Json doc = load_json_arg(arg);
    if ((flags.psd || flags.eq) && doc.is_object() && doc.contains("algebra") &&
        doc.at("algebra").is_object() && doc.at("algebra").contains("group") &&
        doc.at("algebra").at("group").value("kind", "") == "hermitian") {
        if (flags.psd) doc["algebra"]["group"]["psd_tolerance"] = *flags.psd;
        if (flags.eq) doc["algebra"]["group"]["eq_tolerance"] = *flags.eq;
    }
    return coex::beta_document_parse(doc);
}

void emit(const coex::Json& j) { std::cout << coex::dump_canonical(j); }

int cmd_verify(const std::string& doc_arg, const ToleranceFlags& flags, int max_ground) {
    const auto parsed = load_beta_document(doc_arg, flags);
    const auto report = coex::verify_witness(parsed.table, max_ground);
    coex::Json out;
    out["verification"] = coex::witness_report_to_json(report, parsed.table);
    coex::Json implied = coex::Json::array();
    for (coex::SubsetKey key : parsed.implied) implied.push_back(coex::subset_to_json(key));
    out["implied"] = std::move(implied);
    bool structural_ok = true;
    if (report.pass) {
        const auto structural = coex::structural_properties(parsed.table);
        structural_ok = structural.all_hold();
        out["structural"] = coex::structural_report_to_json(structural);
    }
    emit(out);
    return report.pass && structural_ok ? kExitPass : kExitMathFailure;
}

int cmd_certify(const std::string& doc_arg, const ToleranceFlags& flags, int max_ground) {
    const auto parsed = load_beta_document(doc_arg, flags);
    const auto result = coex::certify_coexistent(parsed.table, max_ground);
    if (!result.certified()) {
        coex::Json out;
        out["certified"] = false;
        out["verification"] = coex::witness_report_to_json(result.verification, parsed.table);
        emit(out);
        return kExitMathFailure;
    }
    coex::Json out = coex::certificate_to_json(*result.certificate);
    out["certified"] = true;
    emit(out);
    return kExitPass;
}

int cmd_oracle(const std::string& algebra_arg, const ToleranceFlags& flags,
               const coex::OracleConfig& cfg, bool no_certify) {
    const auto algebra = load_algebra_arg(algebra_arg, flags);
    const auto report = coex::theoremmain_harness(algebra, cfg, !no_certify);
    emit(coex::harness_report_to_json(report, algebra, cfg));
    if (report.truncated) return kExitCapExceeded;
    return report.all_agree ? kExitPass : kExitMathFailure;
}

int cmd_pair(const std::string& algebra_arg, const std::string& a_arg,
             const std::string& b_arg, const std::optional<std::string>& candidates_arg,
             const ToleranceFlags& flags) {
    const auto algebra = load_algebra_arg(algebra_arg, flags);
    const auto a = coex::make_effect(
        algebra, coex::element_from_json(coex::parse_json(a_arg), algebra->group()));
    const auto b = coex::make_effect(
        algebra, coex::element_from_json(coex::parse_json(b_arg), algebra->group()));
    coex::PairWitnessResult result;
    if (candidates_arg) {
        std::vector<coex::Effect> candidates;
        for (const auto& c : coex::parse_json(*candidates_arg))
            candidates.push_back(
                coex::make_effect(algebra, coex::element_from_json(c, algebra->group())));
        result = coex::pair_witness_candidates(a, b, candidates);
    } else {
        result = coex::pair_witness_search(a, b);
    }
    emit(coex::pair_result_to_json(result, a, b));
    if (result.witnesses.empty() && result.exhaustive) return kExitMathFailure;
    return kExitPass;
}

int cmd_product(const std::string& doc_arg, const ToleranceFlags& flags, double commute_tol) {
    coex::Json doc = load_json_arg(doc_arg);
    if (!doc.is_object() || !doc.contains("algebra") || !doc.contains("effects"))
        throw coex::ParseError("product document needs 'algebra' and 'effects'");
    const auto algebra = load_algebra_arg(doc.at("algebra").dump(), flags);
    std::vector<coex::Effect> effects;
    for (const auto& e : doc.at("effects"))
        effects.push_back(
            coex::make_effect(algebra, coex::element_from_json(e, algebra->group())));
    coex::GroundSet ground(algebra, effects);
    coex::Json out;
    out["commute_tolerance"] = commute_tol;
    try {
        const auto beta = coex::product_witness(ground, commute_tol);
        const auto report = coex::verify_witness(beta);
        out["beta"] = coex::beta_document(beta);
        out["verification"] = coex::witness_report_to_json(report, beta);
        emit(out);
        return report.pass ? kExitPass : kExitMathFailure;
    } catch (const coex::NotCommuting& e) {
        out["error"] = e.what();
        out["coexistent_by_product"] = false;
        emit(out);
        return kExitMathFailure;
    }
}

int cmd_meet(const std::string& algebra_arg, const std::string& ground_arg,
             const ToleranceFlags& flags) {
    const auto algebra = load_algebra_arg(algebra_arg, flags);
    std::vector<coex::Effect> elements;
    for (const auto& e : load_json_arg(ground_arg))
        elements.push_back(
            coex::make_effect(algebra, coex::element_from_json(e, algebra->group())));
    coex::GroundSet ground(algebra, elements);
    try {
        const auto beta = coex::meet_witness(algebra, ground);
        emit(coex::beta_document(beta));
        return kExitPass;
    } catch (const coex::NotMV& e) {
        coex::Json out;
        out["error"] = e.what();
        emit(out);
        return kExitMathFailure;
    }
}

int cmd_fixtures() {
    coex::Json out = coex::Json::array();
    for (const auto& name : coex::fixtures::names()) {
        coex::Json item;
        item["name"] = name;
        item["algebra"] = coex::algebra_to_json(coex::fixtures::by_name(name));
        if (coex::fixtures::by_name(name)->group().is_integer())
            item["size"] = coex::enumerate_effects(coex::fixtures::by_name(name)).size();
        out.push_back(std::move(item));
    }
    emit(out);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coexistence toolkit for interval effect algebras"};
    app.require_subcommand(1);

    ToleranceFlags flags;
    int max_ground = 0;

    std::string doc_arg;
    auto* verify = app.add_subcommand("verify", "verify the witness axioms for a beta document");
    verify->add_option("document", doc_arg, "beta document (file or inline JSON)")->required();
    verify->add_option("--max-ground", max_ground, "cap on |S| (env COEX_MAX_GROUND)");
    add_tolerance_flags(verify, flags);

    std::string certify_doc;
    auto* certify = app.add_subcommand("certify", "emit a coexistence certificate");
    certify->add_option("document", certify_doc, "beta document (file or inline JSON)")
        ->required();
    certify->add_option("--max-ground", max_ground, "cap on |S| (env COEX_MAX_GROUND)");
    add_tolerance_flags(certify, flags);

    std::string oracle_algebra;
    coex::OracleConfig oracle_cfg;
    oracle_cfg.max_ground = 3;
    long long time_budget_ms = 0;
    bool no_certify = false;
    auto* oracle = app.add_subcommand("oracle", "run the brute-force agreement harness");
    oracle->add_option("algebra", oracle_algebra, "algebra document or fixture name")
        ->required();
    auto* oracle_ground =
        oracle->add_option("--max-ground", oracle_cfg.max_ground, "cap on |S| (default 3)");
    oracle->add_option("--max-parts", oracle_cfg.max_parts,
                       "cap on decomposition length (default 8)");
    oracle->add_option("--time-budget", time_budget_ms, "time budget in milliseconds");
    oracle->add_flag("--no-certify", no_certify, "skip certify_coexistent on found witnesses");
    add_tolerance_flags(oracle, flags);

    std::string pair_algebra, pair_a, pair_b;
    std::optional<std::string> pair_candidates;
    auto* pair = app.add_subcommand("pair", "search for pair witness elements");
    pair->add_option("algebra", pair_algebra, "algebra document or fixture name")->required();
    pair->add_option("--a", pair_a, "first effect (JSON)")->required();
    pair->add_option("--b", pair_b, "second effect (JSON)")->required();
    pair->add_option("--candidates", pair_candidates,
                     "candidate witnesses (JSON array; required for Hermitian carriers)");
    add_tolerance_flags(pair, flags);

    std::string product_doc;
    double commute_tol = 1e-10;
    auto* product = app.add_subcommand("product", "product witness for commuting effects");
    product->add_option("document", product_doc, "{algebra, effects} document")->required();
    product->add_option("--commute-tol", commute_tol, "commutation tolerance (default 1e-10)");
    add_tolerance_flags(product, flags);

    std::string meet_algebra, meet_ground;
    auto* meet = app.add_subcommand("meet", "meet witness table on an MV algebra");
    meet->add_option("algebra", meet_algebra, "algebra document or fixture name")->required();
    meet->add_option("--ground", meet_ground, "ground set (JSON array of elements)")
        ->required();
    add_tolerance_flags(meet, flags);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "list the bundled algebras");
    (void)fixtures_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (max_ground <= 0) max_ground = ground_cap_default();
        if (*oracle && !*oracle_ground) {
            if (const char* env = std::getenv("COEX_MAX_GROUND"))
                oracle_cfg.max_ground = std::stoi(env);
        }
        oracle_cfg.time_budget = std::chrono::milliseconds(time_budget_ms);

        if (*verify) return cmd_verify(doc_arg, flags, max_ground);
        if (*certify) return cmd_certify(certify_doc, flags, max_ground);
        if (*oracle) return cmd_oracle(oracle_algebra, flags, oracle_cfg, no_certify);
        if (*pair) return cmd_pair(pair_algebra, pair_a, pair_b, pair_candidates, flags);
        if (*product) return cmd_product(product_doc, flags, commute_tol);
        if (*meet) return cmd_meet(meet_algebra, meet_ground, flags);
        return cmd_fixtures();
    } catch (const coex::SizeExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const coex::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const coex::UnsupportedCarrier& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const coex::OutOfInterval& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const coex::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

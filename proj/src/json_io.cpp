#include "coex/json_io.hpp"

#include <algorithm>

namespace coex {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> fields,
                    const std::string& what) {
    if (!j.is_object()) throw ParseError(what + " must be a JSON object");
    for (const char* f : fields)
        if (!j.contains(f)) throw ParseError(what + " is missing field '" + f + "'");
}

IntVector int_vector_from_json(const Json& j, int dimension) {
    // a bare integer is accepted for one-dimensional carriers
    if (j.is_number_integer() && dimension == 1)
        return IntVector({j.get<Int>()});
    if (!j.is_array()) throw ParseError("integer vector must be an array");
    std::vector<Int> entries;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError("integer vector entries must be integers");
        entries.push_back(e.get<Int>());
    }
    if (dimension >= 0 && static_cast<int>(entries.size()) != dimension)
        throw ParseError("integer vector has dimension " + std::to_string(entries.size()) +
                         ", expected " + std::to_string(dimension));
    return IntVector(std::move(entries));
}

Json int_vector_to_json(const IntVector& v) {
    Json j = Json::array();
    for (Int e : v.entries) j.push_back(e);
    return j;
}

HermitianMatrix hermitian_from_json(const Json& j, int dimension) {
    if (!j.is_array()) throw ParseError("Hermitian matrix must be an array of rows");
    const int d = static_cast<int>(j.size());
    if (dimension >= 0 && d != dimension)
        throw ParseError("matrix has dimension " + std::to_string(d) + ", expected " +
                         std::to_string(dimension));
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw ParseError("matrix rows must have length equal to the dimension");
        for (const auto& e : row) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("matrix entries must be [re, im] pairs");
            entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    }
    try {
        return HermitianMatrix::make(d, std::move(entries));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json hermitian_to_json(const HermitianMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dimension; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dimension; ++j)
            row.push_back(Json::array({m.at(i, j).real(), m.at(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json group_to_json(const Group& group) {
    Json j;
    j["kind"] = kind_name(group.kind());
    j["dimension"] = group.dimension();
    if (group.kind() == GroupKind::IntCone) {
        const auto& cone = *group.int_group().cone;
        Json gens = Json::array();
        for (const auto& g : cone.generators()) gens.push_back(int_vector_to_json(g));
        j["generators"] = std::move(gens);
        j["functional"] = int_vector_to_json(cone.functional());
    } else if (group.kind() == GroupKind::Hermitian) {
        const auto& h = group.hermitian_group();
        j["psd_tolerance"] = h.psd_tolerance;
        if (h.eq_tolerance != h.psd_tolerance) j["eq_tolerance"] = h.eq_tolerance;
    }
    return j;
}

Group group_from_json(const Json& j) {
    require_fields(j, {"kind", "dimension"}, "group");
    const std::string kind = j.at("kind").get<std::string>();
    if (!j.at("dimension").is_number_integer())
        throw ParseError("group dimension must be an integer");
    const int dim = j.at("dimension").get<int>();
    if (dim < 1) throw ParseError("group dimension must be positive");
    try {
        if (kind == "int_coordinatewise")
            return Group{IntVectorGroup::coordinatewise(dim)};
        if (kind == "int_cone") {
            require_fields(j, {"generators"}, "cone group");
            std::vector<IntVector> gens;
            for (const auto& g : j.at("generators")) gens.push_back(int_vector_from_json(g, dim));
            if (gens.empty()) throw ParseError("cone group requires generators");
            if (j.contains("functional")) {
                ConeSpec cone(std::move(gens), int_vector_from_json(j.at("functional"), dim));
                return Group{IntVectorGroup::with_cone(std::move(cone))};
            }
            ConeSpec cone(std::move(gens));
            return Group{IntVectorGroup::with_cone(std::move(cone))};
        }
        if (kind == "hermitian") {
            const double psd = j.value("psd_tolerance", 1e-9);
            std::optional<double> eq;
            if (j.contains("eq_tolerance")) eq = j.at("eq_tolerance").get<double>();
            return Group{HermitianGroup::make(dim, psd, eq)};
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown group kind '" + kind + "'");
}

Json element_to_json(const GroupElement& x) {
    if (const auto* v = std::get_if<IntVector>(&x)) return int_vector_to_json(*v);
    return hermitian_to_json(std::get<HermitianMatrix>(x));
}

GroupElement element_from_json(const Json& j, const Group& group) {
    if (group.is_integer()) return int_vector_from_json(j, group.dimension());
    return hermitian_from_json(j, group.dimension());
}

Json algebra_to_json(const AlgebraRef& algebra) {
    Json j;
    j["group"] = group_to_json(algebra->group());
    j["unit"] = element_to_json(algebra->unit());
    return j;
}

AlgebraRef algebra_from_json(const Json& j) {
    require_fields(j, {"group", "unit"}, "algebra");
    Group group = group_from_json(j.at("group"));
    GroupElement unit = element_from_json(j.at("unit"), group);
    try {
        return make_algebra(std::move(group), std::move(unit));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json subset_to_json(SubsetKey key) {
    Json j = Json::array();
    for (int i : subset_indices(key)) j.push_back(i);
    return j;
}

SubsetKey subset_from_json(const Json& j, int ground_size) {
    if (!j.is_array()) throw ParseError("subset must be an array of indices");
    SubsetKey key = 0;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError("subset indices must be integers");
        const int i = e.get<int>();
        if (i < 0 || i >= ground_size)
            throw ParseError("subset index " + std::to_string(i) + " out of range");
        const SubsetKey bit = SubsetKey{1} << i;
        if (key & bit) throw ParseError("subset lists index " + std::to_string(i) + " twice");
        key |= bit;
    }
    return key;
}

Json beta_document(const BetaTable& beta) {
    Json j;
    j["version"] = "1";
    j["algebra"] = algebra_to_json(beta.algebra());
    Json ground = Json::array();
    for (const auto& e : beta.ground().elements()) ground.push_back(element_to_json(e.value()));
    j["ground"] = std::move(ground);
    Json entries = Json::array();
    for (SubsetKey key = 0; key < (SubsetKey{1} << beta.ground_size()); ++key) {
        Json entry;
        entry["subset"] = subset_to_json(key);
        entry["value"] = element_to_json(beta.at(key).value());
        entries.push_back(std::move(entry));
    }
    j["beta"] = std::move(entries);
    return j;
}

ParsedBetaDocument beta_document_parse(const Json& j) {
    require_fields(j, {"algebra", "ground"}, "beta document");
    AlgebraRef algebra = algebra_from_json(j.at("algebra"));
    std::vector<Effect> elements;
    if (!j.at("ground").is_array()) throw ParseError("ground must be an array");
    for (const auto& e : j.at("ground")) {
        try {
            elements.push_back(make_effect(algebra, element_from_json(e, algebra->group())));
        } catch (const OutOfInterval& err) {
            throw ParseError(std::string("ground element out of interval: ") + err.what());
        }
    }
    if (static_cast<int>(elements.size()) > kMaxGroundBits)
        throw ParseError("ground set too large");
    GroundSet ground = [&] {
        try {
            return GroundSet(algebra, elements);
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }();

    const int n = ground.size();
    std::vector<std::optional<Effect>> values(std::size_t{1} << n);
    if (j.contains("beta")) {
        if (!j.at("beta").is_array()) throw ParseError("beta must be an array of entries");
        for (const auto& entry : j.at("beta")) {
            require_fields(entry, {"subset", "value"}, "beta entry");
            const SubsetKey key = subset_from_json(entry.at("subset"), n);
            if (values[key]) throw ParseError("duplicate beta entry for a subset");
            try {
                values[key] =
                    make_effect(algebra, element_from_json(entry.at("value"), algebra->group()));
            } catch (const OutOfInterval& err) {
                throw ParseError(std::string("beta value out of interval: ") + err.what());
            }
        }
    }

    std::vector<SubsetKey> implied;
    for (SubsetKey key = 0; key < (SubsetKey{1} << n); ++key) {
        if (values[key]) continue;
        if (key == 0) {
            values[key] = unit_effect(algebra);
            implied.push_back(key);
        } else if (subset_size(key) == 1) {
            values[key] = ground.element(subset_indices(key).front());
            implied.push_back(key);
        } else {
            throw ParseError("beta document is missing the entry for subset " +
                             subset_to_json(key).dump());
        }
    }

    std::vector<Effect> table_values;
    table_values.reserve(values.size());
    for (auto& v : values) table_values.push_back(std::move(*v));
    return {BetaTable(std::move(ground), std::move(table_values)), std::move(implied)};
}

Json morphism_to_json(const EAMorphism& phi) {
    Json j;
    j["source"] = algebra_to_json(phi.source());
    j["target"] = algebra_to_json(phi.target());
    Json pairs = Json::array();
    for (std::size_t i = 0; i < phi.domain().size(); ++i)
        pairs.push_back(Json::array({element_to_json(phi.domain()[i].value()),
                                     element_to_json(phi.images()[i].value())}));
    j["pairs"] = std::move(pairs);
    return j;
}

EAMorphism morphism_from_json(const Json& j) {
    require_fields(j, {"source", "target", "pairs"}, "morphism");
    AlgebraRef source = algebra_from_json(j.at("source"));
    AlgebraRef target = algebra_from_json(j.at("target"));
    std::vector<Effect> domain;
    std::vector<Effect> images;
    for (const auto& pair : j.at("pairs")) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError("morphism pairs must be [source, target] arrays");
        domain.push_back(make_effect(source, element_from_json(pair[0], source->group())));
        images.push_back(make_effect(target, element_from_json(pair[1], target->group())));
    }
    try {
        return EAMorphism(std::move(source), std::move(target), std::move(domain),
                          std::move(images));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json tolerances_json(const AlgebraRef& algebra) {
    Json j;
    if (algebra->group().is_integer()) {
        j["arithmetic"] = "exact";
    } else {
        const auto& h = algebra->group().hermitian_group();
        j["arithmetic"] = "float";
        j["equality"] = "tolerance-ball";
        j["psd_tolerance"] = h.psd_tolerance;
        j["eq_tolerance"] = h.eq_tolerance;
    }
    return j;
}

Json witness_report_to_json(const WitnessReport& report, const BetaTable& beta) {
    Json j;
    j["pass"] = report.pass;
    j["pairs_checked"] = report.pairs_checked;
    j["d_leq_one"] = report.d_leq_one;
    j["tolerances"] = tolerances_json(beta.algebra());
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json item;
        item["axiom"] = axiom_name(v.axiom);
        if (v.axiom == Axiom::A3) {
            item["X"] = subset_to_json(v.X);
            item["A"] = subset_to_json(v.A);
        } else {
            item["subset"] = subset_to_json(v.X);
        }
        item["value"] = element_to_json(v.value);
        violations.push_back(std::move(item));
    }
    j["violations"] = std::move(violations);
    return j;
}

Json structural_report_to_json(const StructuralReport& report) {
    Json j;
    j["all_hold"] = report.all_hold();
    Json props = Json::array();
    for (const auto& r : report.results) {
        Json item;
        item["property"] = r.property;
        item["status"] = r.status == PropertyStatus::Pass   ? "pass"
                         : r.status == PropertyStatus::Fail ? "fail"
                                                            : "n/a";
        if (!r.counterexample.empty()) item["counterexample"] = r.counterexample;
        props.push_back(std::move(item));
    }
    j["properties"] = std::move(props);
    return j;
}

Json projective_report_to_json(const ProjectiveReport& report) {
    Json j;
    j["pass"] = report.pass;
    j["identity_checks"] = report.identity_checks;
    j["composition_checks"] = report.composition_checks;
    j["compatibility_checks"] = report.compatibility_checks;
    j["atom_checks"] = report.atom_checks;
    j["fully_enumerated_pairs"] = report.fully_enumerated_pairs;
    j["atom_checked_pairs"] = report.atom_checked_pairs;
    j["failures"] = report.failures;
    return j;
}

Json certificate_to_json(const CoexistenceCertificate& certificate) {
    Json j;
    Json s = Json::array();
    for (const auto& e : certificate.ground.elements()) s.push_back(element_to_json(e.value()));
    j["S"] = std::move(s);
    j["beta"] = beta_document(certificate.beta);
    j["verification"] = witness_report_to_json(certificate.verification, certificate.beta);

    Json observables = Json::array();
    for (SubsetKey a = 0; a < (SubsetKey{1} << certificate.ground.size()); ++a) {
        const auto& alpha = certificate.system.at(a);
        Json obs;
        obs["A"] = subset_to_json(a);
        Json atoms = Json::array();
        for (std::size_t i = 0; i < alpha.outcome_count(); ++i) {
            Json atom;
            atom["X"] = subset_to_json(alpha.outcomes()[i]);
            atom["value"] = element_to_json(alpha.atom_values()[i].value());
            atoms.push_back(std::move(atom));
        }
        obs["atoms"] = std::move(atoms);
        observables.push_back(std::move(obs));
    }
    j["observables"] = std::move(observables);
    j["projective_checks"] = projective_report_to_json(certificate.projective);

    Json range = Json::array();
    for (const auto& w : certificate.range_witnesses) {
        Json item;
        item["element"] =
            element_to_json(certificate.ground.element(w.element_index).value());
        item["A"] = subset_to_json(w.A);
        Json outcomes = Json::array();
        for (SubsetKey x : w.outcome_set) outcomes.push_back(subset_to_json(x));
        item["outcome_set"] = std::move(outcomes);
        range.push_back(std::move(item));
    }
    j["range_witnesses"] = std::move(range);
    return j;
}

Json harness_report_to_json(const HarnessReport& report, const AlgebraRef& algebra,
                            const OracleConfig& cfg) {
    Json j;
    j["algebra"] = algebra_to_json(algebra);
    j["max_ground"] = cfg.max_ground;
    j["max_parts"] = cfg.max_parts;
    j["all_agree"] = report.all_agree;
    j["truncated"] = report.truncated;
    j["sets_checked"] = report.sets_checked;
    j["coexistent_count"] = report.coexistent_count;
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json item;
        Json s = Json::array();
        for (int i : e.element_indices) s.push_back(i);
        item["S"] = std::move(s);
        item["witness_exists"] = e.witness_exists;
        item["coexistent"] = e.coexistent;
        item["certified"] = e.certified;
        item["search_space"] = e.search_space;
        item["pruned"] = e.pruned;
        if (e.witness) {
            Json table = Json::array();
            for (SubsetKey key = 0; key < (SubsetKey{1} << e.witness->ground_size()); ++key) {
                Json entry;
                entry["subset"] = subset_to_json(key);
                entry["value"] = element_to_json(e.witness->at(key).value());
                table.push_back(std::move(entry));
            }
            item["witness"] = std::move(table);
        }
        if (!e.decomposition.empty()) {
            Json parts = Json::array();
            for (const auto& p : e.decomposition) parts.push_back(element_to_json(p.value()));
            item["decomposition"] = std::move(parts);
        }
        entries.push_back(std::move(item));
    }
    j["results"] = std::move(entries);
    return j;
}

Json pair_result_to_json(const PairWitnessResult& result, const Effect& a, const Effect& b) {
    Json j;
    j["a"] = element_to_json(a.value());
    j["b"] = element_to_json(b.value());
    j["exhaustive"] = result.exhaustive;
    j["coexistent"] = !result.witnesses.empty();
    Json witnesses = Json::array();
    for (const auto& w : result.witnesses) witnesses.push_back(element_to_json(w.value()));
    j["witnesses"] = std::move(witnesses);
    return j;
}

Json projection_report_to_json(const ProjectionReport& report) {
    Json j;
    j["coexistent"] = report.coexistent;
    j["max_commutator"] = report.max_commutator;
    j["max_idempotency_residual"] = report.max_idempotency_residual;
    j["tolerance"] = report.tolerance;
    if (report.offending_pair)
        j["offending_pair"] = Json::array({report.offending_pair->first,
                                           report.offending_pair->second});
    return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace coex

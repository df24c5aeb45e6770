#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "coex/canonical.hpp"
#include "coex/effects.hpp"
#include "coex/observables.hpp"
#include "coex/oracle.hpp"
#include "coex/witness.hpp"

namespace coex {

/**
 * JSON encodings. Integer vectors are arrays of integers, Hermitian
 * matrices arrays of rows of [re, im] pairs, subsets sorted index lists.
 * Emission is canonical: object keys sorted, beta entries in increasing
 * mask order, so emitted documents are byte-stable under re-parsing.
 */

using Json = nlohmann::json;

Json group_to_json(const Group& group);
Group group_from_json(const Json& j);

Json element_to_json(const GroupElement& x);
/// Validates carrier kind and dimension against the group.
GroupElement element_from_json(const Json& j, const Group& group);

Json algebra_to_json(const AlgebraRef& algebra);
AlgebraRef algebra_from_json(const Json& j);

Json subset_to_json(SubsetKey key);
SubsetKey subset_from_json(const Json& j, int ground_size);

/// {"version": "1", "algebra": ..., "ground": [...], "beta": [...]}
Json beta_document(const BetaTable& beta);

struct ParsedBetaDocument {
    BetaTable table;
    std::vector<SubsetKey> implied;  // subsets auto-filled from (A1)/(A2)
};

/// Missing empty-set/singleton entries are filled in from the axioms and
/// reported as implied; every other subset must be present exactly once.
ParsedBetaDocument beta_document_parse(const Json& j);

Json morphism_to_json(const EAMorphism& phi);
EAMorphism morphism_from_json(const Json& j);

/// Effective comparison semantics of the algebra, echoed into reports.
Json tolerances_json(const AlgebraRef& algebra);

Json witness_report_to_json(const WitnessReport& report, const BetaTable& beta);
Json structural_report_to_json(const StructuralReport& report);
Json projective_report_to_json(const ProjectiveReport& report);
Json certificate_to_json(const CoexistenceCertificate& certificate);
Json harness_report_to_json(const HarnessReport& report, const AlgebraRef& algebra,
                            const OracleConfig& cfg);
Json pair_result_to_json(const PairWitnessResult& result, const Effect& a, const Effect& b);
Json projection_report_to_json(const ProjectionReport& report);

std::string dump_canonical(const Json& j);
Json parse_json(const std::string& text);

}  // namespace coex

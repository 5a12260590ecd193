#pragma once

#include <string>

#include <json.hpp>

#include "tmpow/approx.hpp"
#include "tmpow/beta_expansion.hpp"
#include "tmpow/lemma_lab.hpp"
#include "tmpow/number_field.hpp"
#include "tmpow/seq_stats.hpp"
#include "tmpow/witness.hpp"

namespace tmpow {

// All numeric payloads are decimal strings; balls serialize as
// {"center": "...", "radius": "..."}. Key order is fixed (ordered_json) so
// identical configurations produce byte-identical documents apart from the
// timing block the CLI adds.
using json = nlohmann::ordered_json;

json ball_json(const Ball& b);
json field_json(const NumberField& f);

json witness_json(const CongruenceWitness& w);
json lemma_json(const LemmaReport& rep);
json residual_json(const ResidualReport& rep);
json norm_audit_json(const NormAuditReport& rep);
json beta_expansion_json(const BetaExpansion& e);
json complexity_json(const ComplexityReport& rep);
json moshe_json(const MosheReport& rep);
json frequency_json(const FrequencyReport& rep);
json cube_json(const CubeReport& rep, uint64_t prefix_len);
json affine_json(const AffineReport& rep);

std::string complexity_csv(const ComplexityReport& rep);
std::string moshe_csv(const MosheReport& rep);
std::string frequency_csv(const FrequencyReport& rep);

} // namespace tmpow

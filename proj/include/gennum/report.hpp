#pragma once

#include <json.hpp>
#include <string>

#include "gennum/lielattice.hpp"
#include "gennum/repdecomp.hpp"
#include "gennum/verify.hpp"

namespace gennum::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "gennum";
inline constexpr const char* kVersion = "0.1.0";

json make_report(const std::string& command, const json& params);

json cert_json(const catalog::Certificate& c);
json witness_json(const verify::WitnessInfo& w);
json verdict_json(const verify::Verdict& v);
json defect_json(const verify::DefectReport& r);
json profile_json(const verify::DProfile& r);
json oracle_json(const verify::OracleVerdict& v);
json counts_json(const repdecomp::DecompositionCounts& c);
json table_json(const std::vector<repdecomp::TableRow>& rows);
json lattice_verdict_json(const lielattice::LatticeVerdict& v);

std::string render_text(const json& rep);

}  // namespace gennum::report

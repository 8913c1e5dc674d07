#pragma once

#include "cvcorr/correlations.hpp"
#include "cvcorr/gaussian.hpp"
#include "cvcorr/protocols.hpp"
#include "cvcorr/random_states.hpp"
#include "cvcorr/vector_field.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cvcorr {

// 17 significant digits, '.' decimal; round-trips doubles exactly.
std::string format_double(double v);

// Interchange schema: {"n_modes": int, "mean": [...], "cov": [[...]]},
// row-major, quadrature ordering x1,p1,...,xn,pn.
nlohmann::json state_to_json(const GaussianState& state);
GaussianState state_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CorrelationReport& report);

nlohmann::json trace_to_json(const ProtocolTrace& trace);

// {"basis": "points"|"hg", "amplitudes": [[re,im] x4]}
nlohmann::json field_to_json(const TDoFField& field);
TDoFField field_from_json(const nlohmann::json& j);

// {"m": [[...] x4]}
nlohmann::json mueller_to_json(const MuellerMatrix& m);
MuellerMatrix mueller_from_json(const nlohmann::json& j);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    nlohmann::json params = nlohmann::json::object();
    std::string output;
    std::string version;
};
nlohmann::json manifest_to_json(const RunManifest& manifest);

// CSV with a header row; the manifest is echoed in '#'-prefixed lines above it.
std::string scatter_csv(const std::vector<ScatterRecord>& records,
                        const RunManifest& manifest);

}  // namespace cvcorr

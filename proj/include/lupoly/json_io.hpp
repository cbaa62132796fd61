#pragma once

#include "lupoly/dimension.hpp"
#include "lupoly/fiberlab.hpp"
#include "lupoly/polytope.hpp"
#include "lupoly/qstate.hpp"
#include "lupoly/stability.hpp"
#include "lupoly/wall.hpp"

#include <json.hpp>

#include <filesystem>

namespace lupoly {

using json = nlohmann::json;

// State file: {"L": 4, "amplitudes": [[re, im], ...]} with 2^L entries.
PureState state_from_json(const json& doc, bool renormalize = false);
json state_to_json(const PureState& state);
PureState read_state_file(const std::filesystem::path& path, bool renormalize = false);
void write_state_file(const std::filesystem::path& path, const PureState& state);

// JSON documents use 1-based qubit indices throughout.
json to_json(const Rational& value);  // {"num": n, "den": d}
json to_json(const SpectraPoint& point);
json to_json(const MembershipResult& result, int num_qubits);
json to_json(const StratumClass& cls);
json to_json(const DimReport& report);
json to_json(const VertexList& list);
json to_json(const Facet& facet);
json to_json(const WallOperator& op);
json to_json(const TorusCertificate& cert);
json to_json(const RankResult& rank);
json to_json(const OrbitReport& report);
json to_json(const StabilityVerdict& verdict);
json to_json(const FiberSample& sample);
json to_json(const NumericDimEstimate& estimate);

} // namespace lupoly

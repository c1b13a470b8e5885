#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "framemult/classification.hpp"
#include "framemult/convergence.hpp"
#include "framemult/multiplier.hpp"
#include "framemult/trend.hpp"

// JSON views of analysis results. Non-finite numbers are written as the
// strings "inf", "-inf" and "nan" so documents stay valid JSON.
namespace framemult {

nlohmann::json json_number(double x);
nlohmann::json json_numbers(const std::vector<double>& xs);

nlohmann::json to_json(const LinearFit& fit);
nlohmann::json to_json(const GrowthFit& fit);
nlohmann::json to_json(const TailEvidence& tail);
nlohmann::json to_json(const ScalarClassification& sc);
nlohmann::json to_json(const FrameBounds& fb);
nlohmann::json to_json(const BiorthogonalResult& br);
nlohmann::json to_json(const TraceEvidence& ev);
nlohmann::json to_json(const SquareSumEvidence& ev);
nlohmann::json to_json(const ConvergenceResult& res);
nlohmann::json to_json(const NecessaryReport& rep);
nlohmann::json to_json(const CanonicalResult& res);
nlohmann::json to_json(const InvertibilityReport& rep);
nlohmann::json to_json(const ImpossibilityCertificate& cert);
nlohmann::json to_json(const DualCheck& check);
nlohmann::json to_json(const AdjointCheck& check);

}  // namespace framemult

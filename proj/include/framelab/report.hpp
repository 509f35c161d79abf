#pragma once

#include <nlohmann/json.hpp>

#include "framelab/frame.hpp"
#include "framelab/perturbation.hpp"
#include "framelab/retrieval.hpp"
#include "framelab/tensor.hpp"

namespace framelab {

// JSON views of results for the machine-readable report.

nlohmann::json to_json(const FrameBounds& bounds);
nlohmann::json to_json(const BesselCheck& check);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const AlphaResult& result, Field field, bool with_traces = false);
nlohmann::json to_json(const PerturbationResult& result, Field field);
nlohmann::json to_json(const NormBreakResult& result, Field field);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const TensorPrCheck& check);
nlohmann::json to_json(const TensorNrCheck& check);
nlohmann::json to_json(const Tolerances& tol);

/// Human-readable rendering: one "path: value" line per leaf.
std::string render_text(const nlohmann::json& report);

}  // namespace framelab

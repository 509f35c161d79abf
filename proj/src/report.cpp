#include "framelab/report.hpp"

#include <sstream>

#include "framelab/frame_io.hpp"

namespace framelab {

using nlohmann::json;

json to_json(const FrameBounds& bounds) { return {{"lower", bounds.lower}, {"upper", bounds.upper}}; }

json to_json(const BesselCheck& check) {
  return {{"bound", check.bound}, {"max_norm", check.max_norm}, {"holds", check.holds}};
}

json to_json(const Certificate& cert) {
  json j = {{"verdict", to_string(cert.verdict)},
            {"method", cert.method},
            {"field", to_string(cert.field)}};
  if (cert.witness_subset) j["witness_subset"] = *cert.witness_subset;
  if (cert.witness_pair) {
    j["witness_pair"] = {{"f", vector_to_json(cert.witness_pair->f, cert.field)},
                         {"g", vector_to_json(cert.witness_pair->g, cert.field)}};
  }
  if (cert.alpha_estimate) j["alpha_estimate"] = *cert.alpha_estimate;
  if (cert.violation) j["violation"] = *cert.violation;
  return j;
}

json to_json(const AlphaResult& result, Field field, bool with_traces) {
  json j = {{"alpha", result.alpha},
            {"argmin_f", vector_to_json(result.argmin_f, field)},
            {"argmin_g", vector_to_json(result.argmin_g, field)},
            {"restarts", result.traces.size()}};
  if (with_traces) j["traces"] = result.traces;
  return j;
}

json to_json(const PerturbationResult& result, Field field) {
  return {{"witness_f", vector_to_json(result.witness_f, field)},
          {"witness_g", vector_to_json(result.witness_g, field)},
          {"l2_distance", result.l2_distance},
          {"new_bounds", to_json(result.new_bounds)}};
}

json to_json(const NormBreakResult& result, Field field) {
  json j = to_json(result.result, field);
  j["f"] = vector_to_json(result.f, field);
  j["g"] = vector_to_json(result.g, field);
  j["w1"] = vector_to_json(result.w1, field);
  j["w2"] = vector_to_json(result.w2, field);
  j["w_inner"] = result.w_inner;
  j["scaled_inner"] = result.scaled_inner;
  j["max_delta_norm"] = result.max_delta_norm;
  j["perturbation_energy"] = result.perturbation_energy;
  j["subset_violates"] = result.subset_violates;
  if (result.certificate) j["certificate"] = to_json(*result.certificate);
  return j;
}

json to_json(const SweepRow& row) {
  return {{"lambda", row.lambda}, {"all_preserved", row.all_preserved}, {"failures", row.failures}};
}

json to_json(const TensorPrCheck& check) {
  return {{"left", to_json(check.left)},
          {"right", to_json(check.right)},
          {"product", to_json(check.product)},
          {"theorem_consistent", check.theorem_consistent}};
}

json to_json(const TensorNrCheck& check) {
  return {{"left", to_json(check.left)},
          {"right", to_json(check.right)},
          {"product", to_json(check.product)},
          {"consistent", check.consistent}};
}

json to_json(const Tolerances& tol) {
  return {{"rank", tol.rank},
          {"orthogonality", tol.orthogonality},
          {"check", tol.check},
          {"enumeration_cap", tol.enumeration_cap}};
}

namespace {

void render(const json& node, const std::string& path, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      render(value, path.empty() ? key : path + "." + key, out);
    }
  } else if (node.is_array() && !node.empty() && (node[0].is_object() || node[0].is_array()) &&
             !(node[0].is_array() && node[0].size() == 2 && node[0][0].is_number())) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      render(node[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << path << ": " << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

}  // namespace framelab

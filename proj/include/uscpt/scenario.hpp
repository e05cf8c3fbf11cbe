// scenario.hpp — declarative scenario files (strict JSON), overrides, digest

#pragma once

#include <string>
#include <vector>

#include "uscpt/stirap.hpp"

#include "json.hpp"

namespace uscpt {

struct ScanSpec {
    std::string axis;
    std::vector<double> values;
};

struct ScenarioFile {
    std::string command; // spectrum | amplitudes | stirap | sweep | selectivity
    StirapScenario scenario;
    ScanSpec scan;            // spectrum / amplitudes / sweep
    double gc_over_g{1.0};    // spectrum scans: g_c follows g by this ratio
    int count{0};             // spectrum: lowest-k states (0 = all)
    std::string output;       // optional output path
    nlohmann::json effective; // fully defaulted config (digest input)
};

// Strict parse: unknown keys anywhere are an error; defaults are applied
// (tau_over_T = 0.75, deltas = 0, compensation = off, tol = 1e-9,
// sample_count = 2000) and recorded in `effective`.
ScenarioFile parse_scenario_file(const nlohmann::json& j);

ScenarioFile load_scenario_file(const std::string& path);

// dotted-path override, e.g. "pulse.T=8000" or "model.g=0.1"
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

// FNV-1a 64-bit hex digest of the canonical serialized config
std::string config_digest(const nlohmann::json& j);

} // namespace uscpt

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcm/kernel.hpp"
#include "rcm/pattern.hpp"
#include "rcm/rational.hpp"

namespace rcm {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kConfigVersion = 1;

// One configuration drives every CLI subcommand; unknown keys are rejected so
// typos fail loudly. Numbers that must stay exact (lambda, kernel level,
// region sides) may be given as integers or "p/q" strings; the exact rational
// variants are kept alongside the double values when they parse.
struct RunConfig {
    PatternGraph pattern = PatternGraph::triangle();
    KernelSpec kernel = KernelSpec::boolean_kernel(0.1);
    IntensitySpec intensity;
    std::optional<RegimeSpec> regime;

    double lambda = 50.0;
    std::optional<Rational> lambda_exact;
    std::vector<double> lambda_grid;

    int order = 2;
    int replicates = 1000;
    uint64_t mc_budget = 100000;
    double cost_budget = 1e12;  // simulation refusal threshold, see SimulationPlan
    uint64_t seed = 1;
    int workers = 0;     // 0 keeps the runtime default
    bool serial = false;
    bool force_mc = false;
    bool exact = false;  // constant-kernel exact rational path

    std::optional<Rational> kernel_param_exact;
    std::optional<Rational> scale_base_exact;
    std::optional<Rational> region_measure_exact;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Echo of the effective configuration embedded in every report.
nlohmann::json config_to_json(const RunConfig& cfg);

// Shortest round-trip formatting; used for CSV cells so outputs are
// byte-stable across runs.
std::string fmt_double(double v);

}  // namespace rcm

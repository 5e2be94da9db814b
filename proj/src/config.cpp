#include "rcm/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

namespace rcm {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad("unknown key \"" + it.key() + "\" in " + where);
}

// Exact-capable number: integer, "p/q" string, or plain float (no exact form).
std::optional<Rational> exact_of(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    return std::nullopt;
}

double double_of(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return Rational::parse(v.get<std::string>()).to_double();
    bad(what + " must be a number or \"p/q\" string");
}

Rational rational_of(const json& v, const std::string& what) {
    auto r = exact_of(v);
    if (!r) bad(what + " must be an integer or \"p/q\" string");
    return *r;
}

PatternGraph pattern_from(const json& v) {
    if (v.is_string()) return PatternGraph::named(v.get<std::string>());
    if (v.is_object()) {
        check_keys(v, {"vertices", "edges"}, "pattern");
        int n = v.at("vertices").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : v.at("edges")) {
            if (!e.is_array() || e.size() != 2) bad("pattern edge must be a pair");
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        return PatternGraph::from_edges(n, std::move(edges));
    }
    bad("pattern must be a name or {vertices, edges}");
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("top level must be an object");
    check_keys(j,
               {"version", "pattern", "kernel", "intensity", "regime", "lambda", "lambda_grid",
                "order", "replicates", "mc_budget", "cost_budget", "seed", "workers", "serial",
                "force_mc", "exact"},
               "top level");
    if (!j.contains("version")) bad("missing \"version\"");
    if (j.at("version").get<int>() != kConfigVersion)
        bad("unsupported config version " + j.at("version").dump() + ", expected " +
            std::to_string(kConfigVersion));

    RunConfig cfg;
    if (j.contains("pattern")) cfg.pattern = pattern_from(j.at("pattern"));

    if (j.contains("intensity")) {
        const json& v = j.at("intensity");
        check_keys(v, {"mode", "torus", "sides"}, "intensity");
        if (v.contains("mode")) {
            std::string m = v.at("mode").get<std::string>();
            if (m == "scaled") cfg.intensity.mode = IntensityMode::ScaledIntensity;
            else if (m == "growing_window") cfg.intensity.mode = IntensityMode::GrowingWindow;
            else bad("intensity.mode must be \"scaled\" or \"growing_window\"");
        }
        cfg.intensity.region.torus = v.value("torus", true);
        if (v.contains("sides")) {
            cfg.intensity.region.sides.clear();
            Rational measure(1);
            bool exact_sides = true;
            for (const auto& s : v.at("sides")) {
                cfg.intensity.region.sides.push_back(double_of(s, "intensity side"));
                if (auto r = exact_of(s)) measure *= *r;
                else exact_sides = false;
            }
            if (exact_sides) cfg.region_measure_exact = measure;
        }
    } else {
        cfg.intensity.region = Region{true, {1.0, 1.0}};
        cfg.region_measure_exact = Rational(1);
    }
    if (cfg.intensity.region.sides.empty()) {
        cfg.intensity.region.sides = {1.0, 1.0};
        if (!cfg.region_measure_exact) cfg.region_measure_exact = Rational(1);
    }
    for (double s : cfg.intensity.region.sides)
        if (s <= 0.0) bad("region sides must be positive");

    if (j.contains("kernel")) {
        const json& v = j.at("kernel");
        check_keys(v, {"family", "param", "param_exponent", "scale_base", "scale_exponent",
                       "lambda_min"},
                   "kernel");
        std::string fam = v.value("family", "boolean");
        double param = double_of(v.contains("param") ? v.at("param") : json(0.1), "kernel.param");
        ScalePair scale;
        if (v.contains("scale_base")) scale.base = double_of(v.at("scale_base"), "scale_base");
        if (v.contains("scale_exponent"))
            scale.exponent = rational_of(v.at("scale_exponent"), "scale_exponent");
        double lmin = v.contains("lambda_min") ? double_of(v.at("lambda_min"), "lambda_min") : 1.0;
        Rational pexp(0);
        if (v.contains("param_exponent"))
            pexp = rational_of(v.at("param_exponent"), "param_exponent");
        if (fam == "boolean")
            cfg.kernel = KernelSpec::boolean_kernel(param, scale, pexp, lmin);
        else if (fam == "rayleigh")
            cfg.kernel = KernelSpec::rayleigh(param, scale, lmin);
        else if (fam == "power_law")
            cfg.kernel = KernelSpec::power_law(param, scale, lmin);
        else if (fam == "constant")
            cfg.kernel = KernelSpec::constant(param, scale, lmin);
        else
            bad("unknown kernel family \"" + fam + "\"");
        if (v.contains("param")) cfg.kernel_param_exact = exact_of(v.at("param"));
        if (v.contains("scale_base")) cfg.scale_base_exact = exact_of(v.at("scale_base"));
        else cfg.scale_base_exact = Rational(1);
    } else {
        cfg.kernel_param_exact = std::nullopt;
        cfg.scale_base_exact = Rational(1);
    }

    if (j.contains("regime")) {
        const json& v = j.at("regime");
        check_keys(v, {"type", "decay"}, "regime");
        RegimeSpec r;
        r.type = RegimeSpec::parse_type(v.at("type").get<std::string>());
        if (v.contains("decay")) r.decay = rational_of(v.at("decay"), "regime.decay");
        r.dim = cfg.intensity.region.dim();
        cfg.regime = r;
    }

    if (j.contains("lambda")) {
        cfg.lambda = double_of(j.at("lambda"), "lambda");
        cfg.lambda_exact = exact_of(j.at("lambda"));
    } else {
        cfg.lambda_exact = Rational(50);
    }
    if (cfg.lambda <= 0.0) bad("lambda must be positive");
    if (j.contains("lambda_grid")) {
        for (const auto& v : j.at("lambda_grid"))
            cfg.lambda_grid.push_back(double_of(v, "lambda_grid entry"));
    }

    cfg.order = j.value("order", 2);
    if (cfg.order < 1) bad("order must be at least 1");
    cfg.replicates = j.value("replicates", 1000);
    if (cfg.replicates < 1) bad("replicates must be at least 1");
    cfg.mc_budget = j.value("mc_budget", static_cast<uint64_t>(100000));
    if (cfg.mc_budget < 2) bad("mc_budget must be at least 2");
    cfg.cost_budget = j.value("cost_budget", 1e12);
    if (!(cfg.cost_budget > 0.0)) bad("cost_budget must be positive");
    cfg.seed = j.value("seed", static_cast<uint64_t>(1));
    cfg.workers = j.value("workers", 0);
    if (cfg.workers < 0) bad("workers must be >= 0");
    cfg.serial = j.value("serial", false);
    cfg.force_mc = j.value("force_mc", false);
    cfg.exact = j.value("exact", false);
    if (cfg.exact) {
        if (cfg.kernel.family != KernelFamily::Constant)
            bad("exact mode requires the constant kernel");
        if (!cfg.kernel.scale.exponent.is_zero())
            bad("exact mode requires a lambda-independent scale");
        if (!cfg.lambda_exact || !cfg.kernel_param_exact || !cfg.scale_base_exact ||
            !cfg.region_measure_exact)
            bad("exact mode needs lambda, kernel level, scale and sides as exact rationals");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        bad(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    json j;
    j["version"] = kConfigVersion;
    if (cfg.pattern.name == "custom") {
        json edges = json::array();
        for (auto [a, b] : cfg.pattern.edge_list) edges.push_back({a, b});
        j["pattern"] = {{"vertices", cfg.pattern.vcount}, {"edges", edges}};
    } else {
        j["pattern"] = cfg.pattern.name;
    }
    j["kernel"] = {{"family", cfg.kernel.family_name()},
                   {"param", cfg.kernel.param},
                   {"param_exponent", cfg.kernel.param_exponent.str()},
                   {"scale_base", cfg.kernel.scale.base},
                   {"scale_exponent", cfg.kernel.scale.exponent.str()},
                   {"lambda_min", cfg.kernel.lambda_min}};
    j["intensity"] = {
        {"mode", cfg.intensity.mode == IntensityMode::ScaledIntensity ? "scaled"
                                                                      : "growing_window"},
        {"torus", cfg.intensity.region.torus},
        {"sides", cfg.intensity.region.sides}};
    if (cfg.regime)
        j["regime"] = {{"type", cfg.regime->type_name()}, {"decay", cfg.regime->decay.str()}};
    j["lambda"] = cfg.lambda;
    if (!cfg.lambda_grid.empty()) j["lambda_grid"] = cfg.lambda_grid;
    j["order"] = cfg.order;
    j["replicates"] = cfg.replicates;
    j["mc_budget"] = cfg.mc_budget;
    j["cost_budget"] = cfg.cost_budget;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["serial"] = cfg.serial;
    j["force_mc"] = cfg.force_mc;
    j["exact"] = cfg.exact;
    return j;
}

std::string fmt_double(double v) {
    char buf[64];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace rcm

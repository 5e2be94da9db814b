// Batch front-end for the partition-diagram calculus: enumeration, diagram
// moments/cumulants, direct simulation, scaling fits, and verification
// suites. Every command is deterministic given (config, seed, workers);
// exit codes: 0 success, 1 failed verification gate, 2 resource or regime
// refusal, 3 usage or config error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "rcm/config.hpp"
#include "rcm/cumulant.hpp"
#include "rcm/integrate.hpp"
#include "rcm/kernel.hpp"
#include "rcm/partition.hpp"
#include "rcm/pattern.hpp"
#include "rcm/quotient.hpp"
#include "rcm/rng.hpp"
#include "rcm/simulate.hpp"
#include "rcm/stats.hpp"
#include "rcm/weights.hpp"

using nlohmann::json;
using namespace rcm;

namespace {

// ---------------------------------------------------------------------- io

// "-" means stdout; anything else is a file we create.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const std::string& path, const json& j) {
    Sink sink(path);
    sink.out() << j.dump(2) << "\n";
}

// ------------------------------------------------------------------ config

// Shared flags; values override the config file by being written into its
// JSON before validation, so overrides obey exactly the same rules.
struct CommonOpts {
    std::string config_path;
    std::string pattern;
    std::string lambda;
    int order = -1;
    long long replicates = -1;
    long long mc_budget = -1;
    double cost_budget = -1.0;
    long long seed = -1;
    int workers = -1;
    bool serial = false;
    bool force_mc = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (flags override it)");
    cmd->add_option("--pattern", o.pattern, "pattern name: edge|path:k|cycle:k|triangle|complete:k|vertex");
    cmd->add_option("--lambda", o.lambda, "intensity parameter (number or p/q)");
    cmd->add_option("--order", o.order, "moment/cumulant order");
    cmd->add_option("--replicates", o.replicates, "simulation replicates");
    cmd->add_option("--mc-budget", o.mc_budget, "Monte Carlo samples per diagram");
    cmd->add_option("--cost-budget", o.cost_budget,
                    "refuse simulations whose projected embedding work exceeds this");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--workers", o.workers, "worker threads (0 = runtime default)");
    cmd->add_flag("--serial", o.serial, "force the serial execution path");
    cmd->add_flag("--force-mc", o.force_mc, "bypass exact integral routes");
}

// integer, p/q, or float, in that order of preference
json number_json(const std::string& s) {
    if (s.find('/') != std::string::npos) return s;
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
    } catch (...) {
    }
    size_t pos = 0;
    double d = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: \"" + s + "\"");
    return d;
}

RunConfig build_config(const CommonOpts& o) {
    json j;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::invalid_argument("cannot open " + o.config_path);
        in >> j;
    } else {
        j = json{{"version", kConfigVersion}};
    }
    if (!o.pattern.empty()) j["pattern"] = o.pattern;
    if (!o.lambda.empty()) j["lambda"] = number_json(o.lambda);
    if (o.order >= 0) j["order"] = o.order;
    if (o.replicates >= 0) j["replicates"] = o.replicates;
    if (o.mc_budget >= 0) j["mc_budget"] = o.mc_budget;
    if (o.cost_budget >= 0) j["cost_budget"] = o.cost_budget;
    if (o.seed >= 0) j["seed"] = static_cast<uint64_t>(o.seed);
    if (o.workers >= 0) j["workers"] = o.workers;
    if (o.serial) j["serial"] = true;
    if (o.force_mc) j["force_mc"] = true;

    RunConfig cfg = config_from_json(j);
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#endif
    return cfg;
}

ExecMode mode_of(const RunConfig& cfg) {
    return cfg.serial ? ExecMode::Serial : ExecMode::Parallel;
}

// ---------------------------------------------------------- diagram reports

json scan_json(const ExponentScan& scan) {
    if (scan.empty) return json{{"empty", true}};
    return json{{"exponent", scan.exponent.str()},
                {"dominant_vertices", scan.dominant_vertices},
                {"dominant_edges", scan.dominant_edges},
                {"dominant_count", scan.dominant_count}};
}

// Moment (non-flat) or cumulant (connected non-flat) of N_G at the given
// order, with block-count subtotals and the symbolic degree scan.
json diagram_report(const RunConfig& cfg, bool connected) {
    PartitionFilter filter =
        connected ? PartitionFilter::ConnectedNonFlat : PartitionFilter::NonFlat;
    ExecMode mode = mode_of(cfg);
    int cols = cfg.pattern.vcount;

    json out;
    out["command"] = connected ? "cumulant" : "moment";
    out["artifact_version"] = kArtifactVersion;
    out["config"] = config_to_json(cfg);
    out["order"] = cfg.order;

    SymbolicWeight sym{&cfg.pattern};
    PartitionWeight<SymbolicTally> symw = sym;
    auto tally = sum_partitions<SymbolicTally>(cfg.order, cols, filter, symw, mode);
    json classes = json::array();
    for (const auto& [key, count] : tally.total.terms)
        classes.push_back({{"vertices", key.first}, {"edges", key.second}, {"count", count}});
    out["symbolic"] = {{"classes", classes}};

    if (cfg.regime) {
        // lambda-degree scan of the tally under the regime's coupling
        const RegimeSpec& rg = *cfg.regime;
        ExponentScan scan;
        if (rg.type == RegimeType::Dilute || rg.type == RegimeType::Sparse)
            scan = scan_intensity_decay(tally.total, rg.decay);
        else
            scan = scan_radius_decay(tally.total, Rational(rg.dim) * rg.decay);
        out["symbolic"]["scan"] = scan_json(scan);
        out["regime"] = {{"type", rg.type_name()},
                         {"decay", rg.decay.str()},
                         {"predicted_exponent",
                          predicted_cumulant_exponent(rg, cfg.pattern, cfg.order).str()}};
    }

    json subtotals = json::array();
    if (cfg.exact) {
        Rational mass = *cfg.lambda_exact * *cfg.region_measure_exact;
        Rational cp = *cfg.scale_base_exact * *cfg.kernel_param_exact;
        ConstantKernelExactWeight w{&cfg.pattern, mass, cp};
        PartitionWeight<Rational> pw = w;
        auto sum = sum_partitions<Rational>(cfg.order, cols, filter, pw, mode);
        out["method"] = "exact_rational";
        out["value"] = sum.total.to_double();
        out["value_exact"] = sum.total.str();
        out["std_error"] = 0.0;
        for (const auto& [blocks, value] : sum.by_block_count)
            subtotals.push_back({{"blocks", blocks},
                                 {"value", value.to_double()},
                                 {"value_exact", value.str()}});
    } else {
        McOptions mc{cfg.mc_budget, cfg.seed, cfg.force_mc};
        RcmDiagramWeight w(cfg.pattern, cfg.kernel, cfg.intensity, cfg.lambda, mc);
        PartitionWeight<Est> pw = std::ref(w);
        auto sum = sum_partitions<Est>(cfg.order, cols, filter, pw, mode);
        out["method"] = "diagram_integrals";
        out["value"] = sum.total.value;
        out["std_error"] = sum.total.std_error();
        for (const auto& [blocks, value] : sum.by_block_count)
            subtotals.push_back(
                {{"blocks", blocks}, {"value", value.value}, {"std_error", value.std_error()}});
    }
    out["subtotals_by_block_count"] = subtotals;
    return out;
}

// ------------------------------------------------------------------ verify

struct Gate {
    std::string name;
    bool pass = false;
    std::string detail;

    explicit Gate(std::string n) : name(std::move(n)) {}
};

int report_gates(const std::string& suite, const std::vector<Gate>& gates) {
    int failed = 0;
    for (const auto& g : gates) {
        std::cout << (g.pass ? "PASS " : "FAIL ") << g.name;
        if (!g.detail.empty()) std::cout << "  " << g.detail;
        std::cout << "\n";
        if (!g.pass) ++failed;
    }
    std::cout << "suite " << suite << ": " << (gates.size() - failed) << " passed, " << failed
              << " failed\n";
    return failed == 0 ? 0 : 1;
}

uint64_t factorial_u(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

std::vector<Gate> counting_gates() {
    std::vector<Gate> gates;
    for (int r : {2, 3}) {
        Gate g1{"singleton-grid C(1," + std::to_string(r) + ") = 1"};
        g1.pass = count_partitions(1, r, PartitionFilter::ConnectedNonFlat) == 1;
        gates.push_back(g1);
    }
    for (int n = 1; n <= 4; ++n) {
        for (int r : {2, 3}) {
            if (n * r > 12) continue;
            std::string at = "(" + std::to_string(n) + "," + std::to_string(r) + ")";
            uint64_t enumerated = count_maximal(n, r);
            uint64_t formula = formula_maximal(n, r);
            Gate gf{"maximal-count formula " + at};
            gf.pass = enumerated == formula;
            gf.detail = "enumerated " + std::to_string(enumerated) + ", formula " +
                        std::to_string(formula);
            gates.push_back(gf);

            // product upper bound on |M(n,r)|
            long double bound1 = 1.0L;
            for (int i = 0; i < n - 1; ++i)
                bound1 *= static_cast<long double>((r - 1) * r);
            bound1 *= static_cast<long double>(factorial_u(n));
            Gate gb{"maximal-count bound " + at};
            gb.pass = static_cast<long double>(enumerated) <= bound1;
            gb.detail = "enumerated " + std::to_string(enumerated) + ", bound " +
                        std::to_string(static_cast<unsigned long long>(bound1));
            gates.push_back(gb);

            // coarse bound on all connected non-flat partitions
            uint64_t conn = count_partitions(n, r, PartitionFilter::ConnectedNonFlat);
            long double bound0 = 1.0L;
            for (int i = 0; i < r; ++i) bound0 *= static_cast<long double>(factorial_u(n));
            for (int i = 0; i < n - 1; ++i) bound0 *= static_cast<long double>(factorial_u(r));
            Gate gc{"connected-count bound " + at};
            gc.pass = static_cast<long double>(conn) <= bound0;
            gc.detail = "count " + std::to_string(conn);
            gates.push_back(gc);
        }
    }
    return gates;
}

// Deterministic factorizing weight for the identity suite: the value of a
// partition is the product over connected components of a hash-keyed
// rational, which is exactly the shape Prop-style virtual cumulants need.
class HashFactorizing {
public:
    explicit HashFactorizing(uint64_t seed) : seed_(seed) {}
    Rational operator()(const GridPartition& p) const {
        Rational out(1);
        for (const auto& comp : split_components(p)) out *= shape_value(comp.part);
        return out;
    }

private:
    Rational shape_value(const GridPartition& comp) const {
        std::string s = comp.rgs_string();
        uint64_t h = mix_key(seed_, mix_key(fnv1a64(s.data(), s.size()),
                                            static_cast<uint64_t>(comp.rows)));
        long long num = 1 + static_cast<long long>(h % 5);
        if (h & 1) num = -num;
        return Rational(num, 1 + static_cast<long long>((h >> 8) % 4));
    }
    uint64_t seed_;
};

std::vector<Gate> identity_gates() {
    std::vector<Gate> gates;

    // virtual-cumulant identity: recursion == connected-partition sum
    int weights_checked = 0;
    bool all_ok = true;
    std::string first_fail;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        HashFactorizing f(seed);
        PartitionWeight<Rational> w = f;
        for (int r = 2; r <= 4; ++r) {
            for (int n = 1; n * r <= 9; ++n) {
                auto fhat = virtual_moments<Rational>(n, r, w, ExecMode::Serial);
                auto rec = virtual_cumulants_recursive<Rational>(fhat);
                Rational conn = connected_sum<Rational>(n, r, w, ExecMode::Serial);
                if (rec[n - 1] != conn && first_fail.empty()) {
                    all_ok = false;
                    first_fail = "seed " + std::to_string(seed) + " at (" + std::to_string(n) +
                                 "," + std::to_string(r) + ")";
                }
            }
        }
        ++weights_checked;
    }
    Gate gi{"virtual cumulant recursion equals connected sum"};
    gi.pass = all_ok;
    gi.detail = all_ok ? std::to_string(weights_checked) + " factorizing weights, grids up to 9 cells"
                       : first_fail;
    gates.push_back(gi);

    // moment<->cumulant consistency, exact constant kernel
    for (const char* name : {"edge", "path:3", "triangle"}) {
        auto g = PatternGraph::named(name);
        ConstantKernelExactWeight w{&g, Rational(15, 2), Rational(1, 4)};
        PartitionWeight<Rational> pw = w;
        bool ok = true;
        int max_order = g.vcount == 2 ? 3 : (g.vcount == 3 ? 3 : 2);
        std::vector<Rational> moments;
        for (int k = 1; k <= max_order; ++k)
            moments.push_back(
                moment_via_partitions<Rational>(k, g.vcount, pw, ExecMode::Serial).total);
        auto cums = cumulants_from_moments<Rational>(moments);
        for (int k = 1; k <= max_order; ++k) {
            Rational direct =
                cumulant_via_connected<Rational>(k, g.vcount, pw, ExecMode::Serial).total;
            ok = ok && cums[k - 1] == direct;
        }
        Gate gm{std::string("moment-cumulant inversion (") + name + ", constant kernel)"};
        gm.pass = ok;
        gm.detail = "orders 1.." + std::to_string(max_order) + ", exact rational";
        gates.push_back(gm);
    }
    return gates;
}

// --------------------------------------------------------------- commands

struct EnumerateOpts {
    int rows = 0;
    int cols = 0;
    std::string filter = "connected_nonflat";
    bool count_only = false;
    bool max_blocks_only = false;
    bool check_formula = false;
    uint64_t limit = 0;
    double time_budget_sec = 0.0;
    std::string out = "-";
};

PartitionFilter parse_filter(const std::string& s) {
    if (s == "all") return PartitionFilter::All;
    if (s == "nonflat") return PartitionFilter::NonFlat;
    if (s == "connected") return PartitionFilter::Connected;
    if (s == "connected_nonflat") return PartitionFilter::ConnectedNonFlat;
    throw std::invalid_argument("unknown filter \"" + s +
                                "\" (all|nonflat|connected|connected_nonflat)");
}

int cmd_enumerate(const EnumerateOpts& o) {
    Sink sink(o.out);
    std::ostream& out = sink.out();

    if (o.check_formula) {
        uint64_t enumerated = count_maximal(o.rows, o.cols);
        uint64_t formula = formula_maximal(o.rows, o.cols);
        out << "maximal connected non-flat partitions of [" << o.rows << "]x[" << o.cols << "]\n"
            << "enumerated " << enumerated << "\n"
            << "formula    " << formula << (enumerated == formula ? "  (match)" : "  (MISMATCH)")
            << "\n";
        return enumerated == formula ? 0 : 1;
    }
    if (o.max_blocks_only) {
        out << count_maximal(o.rows, o.cols) << "\n";
        return 0;
    }
    PartitionFilter filter = parse_filter(o.filter);
    if (o.count_only) {
        out << count_partitions(o.rows, o.cols, filter) << "\n";
        return 0;
    }

    auto start = std::chrono::steady_clock::now();
    uint64_t printed = 0;
    bool budget_hit = false;
    enumerate_partitions(o.rows, o.cols, filter, [&](const GridPartition& p) {
        out << p.rgs_string() << "\n";
        ++printed;
        if (o.limit > 0 && printed >= o.limit) return false;
        if (o.time_budget_sec > 0.0 && (printed & 1023u) == 0) {
            std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed.count() > o.time_budget_sec) {
                budget_hit = true;
                return false;
            }
        }
        return true;
    });
    if (budget_hit) {
        std::cerr << "time budget exceeded after " << printed << " partitions\n";
        return 2;
    }
    return 0;
}

int cmd_moment_or_cumulant(const CommonOpts& common, const std::string& out_path,
                           bool connected) {
    RunConfig cfg = build_config(common);
    emit_json(out_path, diagram_report(cfg, connected));
    return 0;
}

int cmd_simulate(const CommonOpts& common, const std::string& out_path,
                 const std::string& summary_path) {
    RunConfig cfg = build_config(common);
    if (out_path == "-" && summary_path == "-")
        throw std::invalid_argument("CSV and summary cannot both go to stdout");

    SimulationPlan plan{cfg.pattern, cfg.kernel, cfg.intensity, cfg.lambda, cfg.replicates,
                        cfg.seed, cfg.cost_budget};
    auto reps = run_replicates(plan, mode_of(cfg));

    {
        Sink sink(out_path);
        std::ostream& out = sink.out();
        out << "replicate,seed,points,count\n";
        for (size_t i = 0; i < reps.size(); ++i)
            out << i << "," << reps[i].seed << "," << reps[i].points << "," << reps[i].count
                << "\n";
    }

    if (!summary_path.empty()) {
        json summary;
        summary["command"] = "simulate";
        summary["artifact_version"] = kArtifactVersion;
        summary["config"] = config_to_json(cfg);
        summary["replicates"] = reps.size();
        double mean = 0.0;
        for (const auto& r : reps) mean += static_cast<double>(r.count);
        mean /= static_cast<double>(reps.size());
        summary["count_mean"] = mean;
        if (reps.size() >= 5) {
            std::vector<double> xs;
            xs.reserve(reps.size());
            for (const auto& r : reps) xs.push_back(static_cast<double>(r.count));
            auto ks = k_statistics(xs);
            summary["k_statistics"] = {{"k1", ks.k[0]},
                                       {"k2", ks.k[1]},
                                       {"k3", ks.k[2]},
                                       {"k4", ks.k[3]},
                                       {"se1", ks.std_error[0]},
                                       {"se2", ks.std_error[1]},
                                       {"se3", ks.std_error[2]},
                                       {"se4", ks.std_error[3]}};
        }
        emit_json(summary_path, summary);
    }
    return 0;
}

int cmd_scaling(const CommonOpts& common, const std::string& out_path,
                const std::string& summary_path) {
    RunConfig cfg = build_config(common);
    if (cfg.lambda_grid.size() < 2)
        throw std::invalid_argument("scaling needs a lambda_grid with at least two points");
    if (out_path == "-" && summary_path == "-")
        throw std::invalid_argument("CSV and summary cannot both go to stdout");
    ExecMode mode = mode_of(cfg);
    int cols = cfg.pattern.vcount;

    std::optional<Rational> exponent;
    if (cfg.regime)
        exponent = predicted_cumulant_exponent(*cfg.regime, cfg.pattern, cfg.order);

    std::vector<ScalingPoint> points;
    for (size_t i = 0; i < cfg.lambda_grid.size(); ++i) {
        double lambda = cfg.lambda_grid[i];
        if (lambda <= 0.0) throw std::invalid_argument("lambda_grid entries must be positive");
        McOptions mc{cfg.mc_budget, mix_key(cfg.seed, i), cfg.force_mc};
        RcmDiagramWeight w(cfg.pattern, cfg.kernel, cfg.intensity, lambda, mc);
        PartitionWeight<Est> pw = std::ref(w);
        auto sum = sum_partitions<Est>(cfg.order, cols, PartitionFilter::ConnectedNonFlat, pw,
                                       mode);
        points.push_back({lambda, sum.total.value, sum.total.std_error()});
    }

    {
        Sink sink(out_path);
        std::ostream& out = sink.out();
        out << "lambda,estimate,std_error,prediction\n";
        for (const auto& p : points) {
            out << fmt_double(p.lambda) << "," << fmt_double(p.value) << ","
                << fmt_double(p.std_error) << ",";
            if (exponent) {
                // predicted power law anchored at the first grid point
                double pred = points.front().value *
                              std::pow(p.lambda / points.front().lambda, exponent->to_double());
                out << fmt_double(pred);
            }
            out << "\n";
        }
    }

    if (!summary_path.empty()) {
        auto fit = fit_scaling_exponent(points);
        json summary;
        summary["command"] = "scaling";
        summary["artifact_version"] = kArtifactVersion;
        summary["config"] = config_to_json(cfg);
        summary["fit"] = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"slope_se", fit.slope_se},
                          {"weighted", fit.weighted}};
        if (exponent) summary["predicted_exponent"] = exponent->str();
        if (cfg.regime) {
            try {
                auto rate = rate_prediction(*cfg.regime, cfg.pattern);
                summary["rate"] = {{"gamma", rate.gamma.str()},
                                   {"delta_exponent", rate.delta_exponent.str()},
                                   {"ks_rate", rate.ks_rate.str()}};
            } catch (const RegimeError& e) {
                summary["rate_refusal"] = e.what();
            }
        }
        emit_json(summary_path, summary);
    }
    return 0;
}

int cmd_verify(const std::string& suite) {
    if (suite == "counting") return report_gates(suite, counting_gates());
    if (suite == "identity") return report_gates(suite, identity_gates());
    if (suite == "all") {
        auto gates = counting_gates();
        auto id = identity_gates();
        gates.insert(gates.end(), id.begin(), id.end());
        return report_gates(suite, gates);
    }
    throw std::invalid_argument("unknown suite \"" + suite +
                                "\" (counting|identity|all)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition-diagram calculus for subgraph counts in the random-connection model"};
    app.require_subcommand(1);

    EnumerateOpts eo;
    auto* en = app.add_subcommand("enumerate", "list or count grid partitions");
    en->add_option("--rows", eo.rows, "grid rows (copies of the pattern)")->required();
    en->add_option("--cols", eo.cols, "grid columns (pattern vertices)")->required();
    en->add_option("--filter", eo.filter, "all|nonflat|connected|connected_nonflat");
    en->add_flag("--count-only", eo.count_only, "print the count instead of the partitions");
    en->add_flag("--max-blocks-only", eo.max_blocks_only,
                 "count connected non-flat partitions with the maximal block count");
    en->add_flag("--check-formula", eo.check_formula,
                 "compare the enumerated maximal count against the product formula");
    en->add_option("--limit", eo.limit, "stop after this many partitions (0 = no limit)");
    en->add_option("--time-budget-sec", eo.time_budget_sec, "stop after this many seconds");
    en->add_option("--out", eo.out, "output path (- for stdout)");

    CommonOpts mo, co, so, go;
    std::string m_out = "-", c_out = "-";
    std::string s_out = "-", s_summary, g_out = "-", g_summary;

    auto* mom = app.add_subcommand("moment", "diagram moment of the subgraph count");
    add_common(mom, mo);
    mom->add_option("--out", m_out, "JSON output path (- for stdout)");

    auto* cum = app.add_subcommand("cumulant", "diagram cumulant of the subgraph count");
    add_common(cum, co);
    cum->add_option("--out", c_out, "JSON output path (- for stdout)");

    auto* sim = app.add_subcommand("simulate", "sample the model and count embeddings");
    add_common(sim, so);
    sim->add_option("--out", s_out, "CSV output path (- for stdout)");
    sim->add_option("--summary", s_summary, "summary JSON path (- for stdout)");

    auto* sca = app.add_subcommand("scaling", "cumulant estimates across a lambda grid");
    add_common(sca, go);
    sca->add_option("--out", g_out, "CSV output path (- for stdout)");
    sca->add_option("--summary", g_summary, "summary JSON path (- for stdout)");

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "counting|identity|all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (en->parsed()) return cmd_enumerate(eo);
        if (mom->parsed()) return cmd_moment_or_cumulant(mo, m_out, false);
        if (cum->parsed()) return cmd_moment_or_cumulant(co, c_out, true);
        if (sim->parsed()) return cmd_simulate(so, s_out, s_summary);
        if (sca->parsed()) return cmd_scaling(go, g_out, g_summary);
        if (ver->parsed()) return cmd_verify(suite);
    } catch (const SizeLimitError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const RegimeError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}

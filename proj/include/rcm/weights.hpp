#pragma once

#include <mutex>
#include <string>
#include <unordered_map>

#include "rcm/cumulant.hpp"
#include "rcm/integrate.hpp"
#include "rcm/quotient.hpp"
#include "rcm/rng.hpp"

namespace rcm {

// Random-connection-model diagram weight: the value of a grid partition is
// the product over its connected components of the component's quotient
// integral. Components are integrated through their canonical (row-relabelled)
// partition and cached by that canonical RGS, so a sub-diagram shape receives
// one estimate per run no matter where it appears. The Monte Carlo seed of a
// component is derived from that key too, which keeps results independent of
// evaluation order and makes moment-side and connected-side sums reuse
// identical estimates on shared diagrams.
class RcmDiagramWeight {
public:
    RcmDiagramWeight(const PatternGraph& g, const KernelSpec& kernel,
                     const IntensitySpec& intensity, double lambda, const McOptions& mc)
        : g_(g), kernel_(kernel), intensity_(intensity), lambda_(lambda), mc_(mc) {}

    Est operator()(const GridPartition& p) const {
        if (p.rows == 1) return component_value(p);
        Est out = Est::exact(1.0);
        for (const auto& comp : split_components(p)) out *= component_value(comp.part);
        return out;
    }

    size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.size();
    }

private:
    Est component_value(const GridPartition& comp) const {
        std::string key = std::to_string(comp.rows) + "|" + comp.rgs_string();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        McOptions local = mc_;
        local.seed = mix_key(mix_key(mc_.seed, static_cast<uint64_t>(comp.rows)),
                             fnv1a64(key.data(), key.size()));
        Est val = integrate_diagram(quotient_graph(comp, g_), kernel_, intensity_, lambda_, local).est;
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(key, val);
        return val;
    }

    PatternGraph g_;
    KernelSpec kernel_;
    IntensitySpec intensity_;
    double lambda_;
    McOptions mc_;
    mutable std::unordered_map<std::string, Est> cache_;
    mutable std::mutex mu_;
};

// Exact rational weight for the constant kernel: mass^V * (c p)^E per
// quotient, zero on vanishing diagrams. mass and cp must be exact inputs.
struct ConstantKernelExactWeight {
    const PatternGraph* g;
    Rational mass;  // lambda * mu(region)
    Rational cp;    // c_lambda * p

    Rational operator()(const GridPartition& p) const {
        QuotientGraph q = quotient_graph(p, *g);
        if (q.vanishing()) return Rational(0);
        return mass.pow(q.vcount) * cp.pow(q.ecount());
    }
};

// Symbolic weight: one tally mark per non-vanishing diagram at the quotient's
// (vertex count, edge count).
struct SymbolicWeight {
    const PatternGraph* g;

    SymbolicTally operator()(const GridPartition& p) const {
        QuotientGraph q = quotient_graph(p, *g);
        SymbolicTally t;
        if (!q.vanishing()) t.terms[{q.vcount, q.ecount()}] = 1;
        return t;
    }
};

}  // namespace rcm

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcm/pattern.hpp"
#include "rcm/rational.hpp"

namespace rcm {

class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

// Axis-aligned box or flat torus. Distances on the torus use the wrapped
// metric coordinate-wise; kernels see only this distance, so "single image"
// is the definition of the kernel there, not an approximation.
struct Region {
    bool torus = true;
    std::vector<double> sides;

    int dim() const { return static_cast<int>(sides.size()); }
    double measure() const;
    double min_side() const;
    double distance(const double* a, const double* b) const;
    Region scaled(double factor) const;
};

// c_lambda = base * lambda^(-exponent), exponent >= 0 (non-increasing).
struct ScalePair {
    double base = 1.0;
    Rational exponent = Rational(0);

    double at(double lambda) const;
    bool is_constant() const { return exponent.is_zero(); }
};

enum class KernelFamily { Boolean, Rayleigh, PowerLaw, Constant };

// Connection kernel H_lambda(x,y) = c_lambda * H(dist). For the boolean
// family the radius itself may scale (random geometric graph regimes):
// R_lambda = radius.base * lambda^(-radius.exponent).
struct KernelSpec {
    KernelFamily family = KernelFamily::Boolean;
    double param = 0.1;       // radius base (boolean), beta (rayleigh/power law), p (constant)
    Rational param_exponent = Rational(0);  // radius decay e; zero for other families
    ScalePair scale;          // c_lambda
    double lambda_min = 1.0;  // validation anchor for c_lambda * sup H <= 1

    static KernelSpec boolean_kernel(double radius, ScalePair scale = {},
                                     Rational radius_exponent = Rational(0),
                                     double lambda_min = 1.0);
    static KernelSpec rayleigh(double beta, ScalePair scale = {}, double lambda_min = 1.0);
    static KernelSpec power_law(double beta, ScalePair scale = {}, double lambda_min = 1.0);
    static KernelSpec constant(double p, ScalePair scale = {}, double lambda_min = 1.0);

    double sup_h() const { return family == KernelFamily::Constant ? param : 1.0; }
    double radius_at(double lambda) const;   // boolean only
    double h_value(double dist, double lambda) const;              // H alone
    double connection_probability(double dist, double lambda) const;  // c_lambda * H

    // Distance beyond which c_lambda*H < eps, if such a cutoff exists.
    std::optional<double> negligible_beyond(double lambda, double eps) const;

    std::string family_name() const;
    void validate() const;
};

// Intensity measure: scaled intensity lambda*mu on a fixed region, or a
// growing window (intensity 1) whose sides stretch by lambda^(1/d). Both give
// total mass lambda * mu(base region).
enum class IntensityMode { ScaledIntensity, GrowingWindow };

struct IntensitySpec {
    IntensityMode mode = IntensityMode::ScaledIntensity;
    Region region;  // base region

    Region region_at(double lambda) const;
    double point_intensity(double lambda) const;
    double mass(double lambda) const;
};

// Asymptotic regimes for the cumulant growth of subgraph counts.
enum class RegimeType { Dilute, Sparse, RggDense, RggThermodynamic, RggSparse };

struct RegimeSpec {
    RegimeType type = RegimeType::Dilute;
    // Dilute: c_lambda ~ lambda^-decay with decay < 1/zeta(G).
    // Sparse: c_lambda ~ lambda^-decay with decay >= 1.
    // Rgg*:   R_lambda ~ lambda^-decay; paired with the region dimension.
    Rational decay = Rational(0);
    int dim = 2;

    static RegimeType parse_type(const std::string& s);
    std::string type_name() const;
};

// lambda-exponent of kappa_n(N_G) in the given regime. Throws RegimeError
// when the regime's admissibility condition fails (e.g. dilute decay at or
// above 1/zeta, rgg-sparse past the connectivity threshold), which the CLI
// surfaces as a refusal rather than a number.
Rational predicted_cumulant_exponent(const RegimeSpec& regime, const PatternGraph& g, int order);

}  // namespace rcm

#include "rcm/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace rcm {

double Region::measure() const {
    double m = 1.0;
    for (double s : sides) m *= s;
    return m;
}

double Region::min_side() const {
    return *std::min_element(sides.begin(), sides.end());
}

double Region::distance(const double* a, const double* b) const {
    double sq = 0.0;
    for (int i = 0; i < dim(); ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (torus && d > sides[i] - d) d = sides[i] - d;
        sq += d * d;
    }
    return std::sqrt(sq);
}

Region Region::scaled(double factor) const {
    Region r = *this;
    for (double& s : r.sides) s *= factor;
    return r;
}

double ScalePair::at(double lambda) const {
    if (exponent.is_zero()) return base;
    return base * std::pow(lambda, -exponent.to_double());
}

KernelSpec KernelSpec::boolean_kernel(double radius, ScalePair scale, Rational radius_exponent,
                                      double lambda_min) {
    KernelSpec k;
    k.family = KernelFamily::Boolean;
    k.param = radius;
    k.param_exponent = radius_exponent;
    k.scale = scale;
    k.lambda_min = lambda_min;
    k.validate();
    return k;
}

KernelSpec KernelSpec::rayleigh(double beta, ScalePair scale, double lambda_min) {
    KernelSpec k;
    k.family = KernelFamily::Rayleigh;
    k.param = beta;
    k.scale = scale;
    k.lambda_min = lambda_min;
    k.validate();
    return k;
}

KernelSpec KernelSpec::power_law(double beta, ScalePair scale, double lambda_min) {
    KernelSpec k;
    k.family = KernelFamily::PowerLaw;
    k.param = beta;
    k.scale = scale;
    k.lambda_min = lambda_min;
    k.validate();
    return k;
}

KernelSpec KernelSpec::constant(double p, ScalePair scale, double lambda_min) {
    KernelSpec k;
    k.family = KernelFamily::Constant;
    k.param = p;
    k.scale = scale;
    k.lambda_min = lambda_min;
    k.validate();
    return k;
}

void KernelSpec::validate() const {
    if (param <= 0.0) throw std::invalid_argument("kernel parameter must be positive");
    if (family == KernelFamily::Constant && param > 1.0)
        throw std::invalid_argument("constant kernel level must lie in (0, 1]");
    if (scale.base <= 0.0) throw std::invalid_argument("scale base must be positive");
    if (scale.exponent < Rational(0))
        throw std::invalid_argument("scale exponent must be non-negative (c_lambda non-increasing)");
    if (param_exponent < Rational(0))
        throw std::invalid_argument("radius exponent must be non-negative");
    if (family != KernelFamily::Boolean && !param_exponent.is_zero())
        throw std::invalid_argument("only the boolean kernel scales its parameter");
    if (lambda_min <= 0.0) throw std::invalid_argument("lambda_min must be positive");
    // c_lambda is non-increasing, so the constraint binds at lambda_min.
    double worst = scale.at(lambda_min) * sup_h();
    if (worst > 1.0 + 1e-12)
        throw std::invalid_argument("c_lambda * sup H exceeds 1 at lambda_min = " +
                                    std::to_string(lambda_min));
}

double KernelSpec::radius_at(double lambda) const {
    if (family != KernelFamily::Boolean)
        throw std::logic_error("radius_at is defined for the boolean kernel only");
    if (param_exponent.is_zero()) return param;
    return param * std::pow(lambda, -param_exponent.to_double());
}

double KernelSpec::h_value(double dist, double lambda) const {
    switch (family) {
        case KernelFamily::Boolean:
            return dist <= radius_at(lambda) ? 1.0 : 0.0;
        case KernelFamily::Rayleigh:
            return std::exp(-param * dist * dist);
        case KernelFamily::PowerLaw:
            return dist <= 1.0 ? 1.0 : std::min(1.0, std::pow(dist, -param));
        case KernelFamily::Constant:
            return param;
    }
    return 0.0;
}

double KernelSpec::connection_probability(double dist, double lambda) const {
    return scale.at(lambda) * h_value(dist, lambda);
}

std::optional<double> KernelSpec::negligible_beyond(double lambda, double eps) const {
    double c = scale.at(lambda);
    switch (family) {
        case KernelFamily::Boolean:
            return radius_at(lambda);
        case KernelFamily::Rayleigh: {
            if (c <= eps) return 0.0;
            return std::sqrt(std::log(c / eps) / param);
        }
        case KernelFamily::PowerLaw:
        case KernelFamily::Constant:
            return std::nullopt;  // heavy tail / no spatial decay
    }
    return std::nullopt;
}

std::string KernelSpec::family_name() const {
    switch (family) {
        case KernelFamily::Boolean: return "boolean";
        case KernelFamily::Rayleigh: return "rayleigh";
        case KernelFamily::PowerLaw: return "power_law";
        case KernelFamily::Constant: return "constant";
    }
    return "?";
}

Region IntensitySpec::region_at(double lambda) const {
    if (mode == IntensityMode::ScaledIntensity) return region;
    return region.scaled(std::pow(lambda, 1.0 / region.dim()));
}

double IntensitySpec::point_intensity(double lambda) const {
    return mode == IntensityMode::ScaledIntensity ? lambda : 1.0;
}

double IntensitySpec::mass(double lambda) const {
    return lambda * region.measure();
}

RegimeType RegimeSpec::parse_type(const std::string& s) {
    if (s == "dilute") return RegimeType::Dilute;
    if (s == "sparse") return RegimeType::Sparse;
    if (s == "rgg_dense") return RegimeType::RggDense;
    if (s == "rgg_thermodynamic") return RegimeType::RggThermodynamic;
    if (s == "rgg_sparse") return RegimeType::RggSparse;
    throw std::invalid_argument("unknown regime type: " + s);
}

std::string RegimeSpec::type_name() const {
    switch (type) {
        case RegimeType::Dilute: return "dilute";
        case RegimeType::Sparse: return "sparse";
        case RegimeType::RggDense: return "rgg_dense";
        case RegimeType::RggThermodynamic: return "rgg_thermodynamic";
        case RegimeType::RggSparse: return "rgg_sparse";
    }
    return "?";
}

Rational predicted_cumulant_exponent(const RegimeSpec& regime, const PatternGraph& g, int order) {
    if (order < 1) throw std::invalid_argument("cumulant order must be positive");
    Rational r(g.vcount);
    Rational n(order);
    Rational e(g.ecount());
    Rational rm1 = r - Rational(1);
    switch (regime.type) {
        case RegimeType::Dilute: {
            if (regime.decay < Rational(0))
                throw RegimeError("dilute regime needs a non-negative intensity decay");
            if (g.ecount() > 0) {
                Rational zeta = g.zeta_exponent();
                if (!(regime.decay * zeta < Rational(1)))
                    throw RegimeError("dilute regime requires decay < 1/zeta = " +
                                      (Rational(1) / zeta).str());
            }
            // 1 + (r-1)n - decay * n * |E|
            return Rational(1) + rm1 * n - regime.decay * n * e;
        }
        case RegimeType::Sparse: {
            if (regime.decay < Rational(1))
                throw RegimeError("sparse regime requires decay >= 1");
            if (g.is_tree()) return regime.decay - (regime.decay - Rational(1)) * r;
            return r - regime.decay * e;
        }
        case RegimeType::RggDense: {
            Rational de = Rational(regime.dim) * regime.decay;
            if (!(de < Rational(1)))
                throw RegimeError("rgg_dense requires dim * radius decay < 1");
            return Rational(1) + rm1 * n * (Rational(1) - de);
        }
        case RegimeType::RggThermodynamic: {
            Rational de = Rational(regime.dim) * regime.decay;
            if (de != Rational(1))
                throw RegimeError("rgg_thermodynamic requires dim * radius decay = 1");
            return Rational(1);
        }
        case RegimeType::RggSparse: {
            Rational de = Rational(regime.dim) * regime.decay;
            if (!(de > Rational(1)))
                throw RegimeError("rgg_sparse requires dim * radius decay > 1");
            Rational expo = r - de * rm1;
            if (!(expo > Rational(0)))
                throw RegimeError("rgg_sparse exponent r - d*e*(r-1) = " + expo.str() +
                                  " is not positive; counts vanish, no prediction");
            return expo;
        }
    }
    throw std::logic_error("unhandled regime");
}

}  // namespace rcm

#include "bandrec/bandlimited.hpp"

#include "bandrec/quadrature.hpp"

#include <cmath>

namespace bandrec {

Spectrum::Spectrum(SpectrumPreset preset, double beta, int dim, std::uint64_t seed,
                   double scale, int quad_order)
    : preset_(preset), beta_(beta), dim_(dim), seed_(seed), scale_(scale),
      quad_order_(quad_order) {
    if (!(beta > 0.0)) throw ConfigError("spectrum requires beta > 0");
    if (dim != 1 && dim != 2) throw ConfigError("bandlimited synthesis supports d in {1, 2}");
    if (quad_order < 2) throw ConfigError("spectral quadrature order must be >= 2");

    if (preset_ == SpectrumPreset::RandomSmooth) {
        series_.resize(6);
        SplitMix64 rng(seed);
        for (Index k = 0; k < series_.size(); ++k) series_[k] = rng.next_in(-1.0, 1.0);
    }

    const quad::Rule& rule = quad::gauss_legendre(quad_order);
    if (dim_ == 1) {
        quad_nodes_.resize(quad_order, 1);
        quad_weights_.resize(quad_order);
        for (int i = 0; i < quad_order; ++i) {
            quad_nodes_(i, 0) = beta_ * rule.nodes[i];
            quad_weights_[i] = beta_ * rule.weights[i];
        }
    } else {
        // Polar rule: Gauss-Legendre in the radius (with the area weight s),
        // midpoint in the angle.
        const int n_ang = quad_order;
        quad_nodes_.resize(quad_order * n_ang, 2);
        quad_weights_.resize(quad_order * n_ang);
        Index m = 0;
        for (int i = 0; i < quad_order; ++i) {
            const double s = 0.5 * beta_ * (rule.nodes[i] + 1.0);
            const double ws = 0.5 * beta_ * rule.weights[i] * s;
            for (int a = 0; a < n_ang; ++a) {
                const double theta = 2.0 * M_PI * (a + 0.5) / n_ang;
                quad_nodes_(m, 0) = s * std::cos(theta);
                quad_nodes_(m, 1) = s * std::sin(theta);
                quad_weights_[m] = ws * 2.0 * M_PI / n_ang;
                ++m;
            }
        }
    }
    quad_density_.resize(quad_nodes_.rows());
    for (Index i = 0; i < quad_nodes_.rows(); ++i)
        quad_density_[i] = density(quad_nodes_.row(i).norm());
}

double Spectrum::density(double s) const {
    if (s > beta_) return 0.0;
    switch (preset_) {
        case SpectrumPreset::Indicator:
            return scale_;
        case SpectrumPreset::CosineBump: {
            const double c = std::cos(0.5 * M_PI * s / beta_);
            return scale_ * c * c;
        }
        case SpectrumPreset::RandomSmooth: {
            // Low-order cosine series, windowed to decay at the band edge.
            const double w = std::cos(0.5 * M_PI * s / beta_);
            double sum = 0.0;
            for (Index k = 0; k < series_.size(); ++k)
                sum += series_[k] * std::cos(k * M_PI * s / beta_);
            return scale_ * w * w * sum;
        }
    }
    return 0.0;
}

BandlimitedFunction::BandlimitedFunction(Spectrum spectrum) : spectrum_(std::move(spectrum)) {
    const Vector& w = spectrum_.quad_weights();
    const Vector& f = spectrum_.quad_density();
    l2_norm_ = std::sqrt(w.dot(f.cwiseAbs2()));
}

double BandlimitedFunction::eval(const Vector& x) const {
    if (x.size() != dim()) throw ConfigError("point dimension does not match function dimension");
    if (dim() == 1 && spectrum_.preset() == SpectrumPreset::Indicator) {
        const double b = beta();
        const double t = x[0];
        const double sinc = (std::abs(t) < 1e-8)
                                ? b * (1.0 - b * b * t * t / 6.0)
                                : std::sin(b * t) / t;
        return spectrum_.scale() * std::sqrt(2.0 / M_PI) * sinc;
    }
    const Matrix& nodes = spectrum_.quad_nodes();
    const Vector& w = spectrum_.quad_weights();
    const Vector& f = spectrum_.quad_density();
    double sum = 0.0;
    for (Index i = 0; i < nodes.rows(); ++i)
        sum += w[i] * f[i] * std::cos(nodes.row(i).dot(x));
    return std::pow(2.0 * M_PI, -0.5 * dim()) * sum;
}

double BandlimitedFunction::eval1(double x) const {
    Vector v(1);
    v[0] = x;
    return eval(v);
}

double BandlimitedFunction::eval_imag(const Vector& x) const {
    const Matrix& nodes = spectrum_.quad_nodes();
    const Vector& w = spectrum_.quad_weights();
    const Vector& f = spectrum_.quad_density();
    double sum = 0.0;
    for (Index i = 0; i < nodes.rows(); ++i)
        sum += w[i] * f[i] * std::sin(nodes.row(i).dot(x));
    return std::pow(2.0 * M_PI, -0.5 * dim()) * sum;
}

Vector BandlimitedFunction::sample(const NodeSet& nodes) const {
    if (nodes.dim() != dim()) throw ConfigError("node dimension does not match function dimension");
    Vector out(nodes.size());
    for (Index i = 0; i < nodes.size(); ++i) out[i] = eval(nodes.point(i));
    return out;
}

BandlimitedFunction synthesize(SpectrumPreset preset, double beta, int dim, std::uint64_t seed,
                               double scale, int quad_order) {
    return BandlimitedFunction(Spectrum(preset, beta, dim, seed, scale, quad_order));
}

SpectrumPreset parse_preset(const std::string& name) {
    if (name == "indicator") return SpectrumPreset::Indicator;
    if (name == "cosine_bump") return SpectrumPreset::CosineBump;
    if (name == "random_smooth") return SpectrumPreset::RandomSmooth;
    throw ConfigError("unknown spectrum preset: " + name);
}

std::string preset_name(SpectrumPreset preset) {
    switch (preset) {
        case SpectrumPreset::Indicator: return "indicator";
        case SpectrumPreset::CosineBump: return "cosine_bump";
        case SpectrumPreset::RandomSmooth: return "random_smooth";
    }
    return "?";
}

}  // namespace bandrec

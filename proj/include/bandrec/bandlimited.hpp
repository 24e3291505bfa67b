#pragma once

#include "bandrec/nodes.hpp"
#include "bandrec/types.hpp"

#include <cstdint>

namespace bandrec {

enum class SpectrumPreset { Indicator, CosineBump, RandomSmooth };

// Compactly supported spectrum on the ball of radius beta, together with a
// quadrature rule over that ball.  All presets are real, even, and radial,
// so the synthesized functions are real-valued.
class Spectrum {
public:
    Spectrum(SpectrumPreset preset, double beta, int dim, std::uint64_t seed,
             double scale = 1.0, int quad_order = 64);

    SpectrumPreset preset() const { return preset_; }
    double beta() const { return beta_; }
    int dim() const { return dim_; }
    double scale() const { return scale_; }
    std::uint64_t seed() const { return seed_; }
    int quad_order() const { return quad_order_; }

    // Radial spectral density at |xi| = s (zero outside the band).
    double density(double s) const;

    const Matrix& quad_nodes() const { return quad_nodes_; }      // M x dim
    const Vector& quad_weights() const { return quad_weights_; }  // M
    const Vector& quad_density() const { return quad_density_; }  // density at nodes

private:
    SpectrumPreset preset_;
    double beta_;
    int dim_;
    std::uint64_t seed_;
    double scale_;
    int quad_order_;
    Vector series_;  // cosine-series coefficients (random_smooth)
    Matrix quad_nodes_;
    Vector quad_weights_;
    Vector quad_density_;
};

// A Paley-Wiener test function given by its spectrum; evaluation goes
// through the Fourier inversion integral on the stored quadrature rule
// (closed form for the one-dimensional indicator).
class BandlimitedFunction {
public:
    explicit BandlimitedFunction(Spectrum spectrum);

    const Spectrum& spectrum() const { return spectrum_; }
    int dim() const { return spectrum_.dim(); }
    double beta() const { return spectrum_.beta(); }

    double eval(const Vector& x) const;
    double eval1(double x) const;  // dim 1 convenience
    // Imaginary part of the inversion integral; ~0 for the even presets.
    double eval_imag(const Vector& x) const;

    // L2 norm via Parseval: the spectral L2 norm over the band.
    double l2_norm() const { return l2_norm_; }

    Vector sample(const NodeSet& nodes) const;

private:
    Spectrum spectrum_;
    double l2_norm_;
};

BandlimitedFunction synthesize(SpectrumPreset preset, double beta, int dim, std::uint64_t seed,
                               double scale = 1.0, int quad_order = 64);

SpectrumPreset parse_preset(const std::string& name);
std::string preset_name(SpectrumPreset preset);

}  // namespace bandrec

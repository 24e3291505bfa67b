#pragma once

#include "bandrec/quadrature.hpp"
#include "bandrec/types.hpp"

#include <memory>

namespace bandrec {

// Modified Bessel function of the second kind, K_gamma(r), by adaptive
// quadrature of its integral representation
//   K_gamma(r) = ∫_0^∞ exp(-r cosh t) cosh(gamma t) dt,   r > 0,
// truncated where the integrand drops below 1e-18 of its running peak.
double bessel_k(double gamma, double r);

// Scalar radial profile s >= 0 -> scale * rule(s).
class RadialProfile {
public:
    enum class Rule { ExpPower, InverseMultiquadric };

    // scale * exp(-a s^p)
    static RadialProfile exp_power(double a, double p, double scale = 1.0);
    // scale * (s^2 + c^2)^(-nu)
    static RadialProfile inverse_multiquadric(double nu, double c, double scale = 1.0);

    double operator()(double s) const;

    Rule rule() const { return rule_; }
    double a() const { return a_; }
    double p() const { return p_; }
    double nu() const { return nu_; }
    double c() const { return c_; }
    double scale() const { return scale_; }

private:
    Rule rule_ = Rule::ExpPower;
    double a_ = 1.0, p_ = 1.0, nu_ = 1.0, c_ = 1.0, scale_ = 1.0;
};

// d-dimensional inverse Fourier transform of a radial profile, evaluated at
// radius r (symmetric transform convention).  The d-dimensional integral is
// reduced to one-dimensional cosine (d=1), angularly averaged cosine (d=2),
// or sine (d=3) transforms.  Throws NumericError when the quadrature cannot
// reach its tolerance.
double radial_inverse_ft(const RadialProfile& profile, int d, double r);

enum class KernelFamily { Gaussian, Imq, PExp };

namespace detail {
struct PExpTable;
}

// One member of the Gaussian / inverse-multiquadric / p-exponential kernel
// families, evaluable in space and frequency.  Immutable after construction;
// the p-exponential spatial table is built eagerly so evaluation is
// read-only.
class Kernel {
public:
    static Kernel gaussian(int dim, double alpha);
    static Kernel imq(int dim, double nu, double c);
    static Kernel pexp(int dim, double p, double alpha, double table_rmax = 160.0);

    KernelFamily family() const { return family_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    double nu() const { return nu_; }
    double c() const { return c_; }
    double p() const { return p_; }

    double spatial_radial(double r) const;
    double spectral_radial(double s) const;

    double spatial(const Vector& x) const;
    double spectral(const Vector& xi) const;

    // Spectral profile as a closed-form radial rule (gaussian / pexp only;
    // the imq spectrum involves K_nu and is exposed via spectral_radial).
    RadialProfile spectral_profile() const;

    // Same kernel with the sweep parameter (alpha, or c for imq) replaced.
    Kernel with_parameter(double value) const;
    double parameter() const;

private:
    Kernel() = default;

    KernelFamily family_ = KernelFamily::Gaussian;
    int dim_ = 1;
    double alpha_ = 1.0, nu_ = 0.0, c_ = 0.0, p_ = 0.0;
    std::shared_ptr<const detail::PExpTable> table_;
};

}  // namespace bandrec

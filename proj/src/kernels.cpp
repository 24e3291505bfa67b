#include "bandrec/kernels.hpp"

#include <cmath>

namespace bandrec {

namespace {

double ln_cosh(double x) {
    x = std::abs(x);
    return x - M_LN2 + std::log1p(std::exp(-2.0 * x));
}

const double kSqrt2OverPi = std::sqrt(2.0 / M_PI);

}  // namespace

double bessel_k(double gamma, double r) {
    if (!(r > 0.0)) throw ConfigError("bessel_k requires r > 0");
    const double g = std::abs(gamma);  // K is symmetric in its order
    const auto integrand = [&](double t) {
        return std::exp(-r * std::cosh(t) + ln_cosh(g * t));
    };
    // Scan for the truncation point; the integrand may rise to an interior
    // peak before the double-exponential decay takes over.
    double peak = integrand(0.0);
    double t_end = 1.0;
    while (t_end < 700.0) {
        const double v = integrand(t_end);
        peak = std::max(peak, v);
        if (v == 0.0 || v < 1e-18 * peak) break;
        t_end += 1.0;
    }
    if (peak == 0.0) return 0.0;
    quad::Options opt;
    opt.abs_tol = std::max(1e-305, peak * t_end * 1e-17);
    opt.rel_tol = 1e-11;
    opt.max_segments = 4000;
    const quad::Result res = quad::adaptive(integrand, 0.0, t_end, opt);
    if (!res.converged)
        throw NumericError("bessel_k quadrature did not converge (error estimate " +
                           std::to_string(res.error) + ")");
    return res.value;
}

RadialProfile RadialProfile::exp_power(double a, double p, double scale) {
    if (!(a > 0.0) || !(p > 0.0)) throw ConfigError("exp_power profile requires a > 0, p > 0");
    RadialProfile profile;
    profile.rule_ = Rule::ExpPower;
    profile.a_ = a;
    profile.p_ = p;
    profile.scale_ = scale;
    return profile;
}

RadialProfile RadialProfile::inverse_multiquadric(double nu, double c, double scale) {
    if (!(nu > 0.0) || !(c > 0.0))
        throw ConfigError("inverse_multiquadric profile requires nu > 0, c > 0");
    RadialProfile profile;
    profile.rule_ = Rule::InverseMultiquadric;
    profile.nu_ = nu;
    profile.c_ = c;
    profile.scale_ = scale;
    return profile;
}

double RadialProfile::operator()(double s) const {
    switch (rule_) {
        case Rule::ExpPower:
            return scale_ * std::exp(-a_ * std::pow(s, p_));
        case Rule::InverseMultiquadric:
            return scale_ * std::pow(s * s + c_ * c_, -nu_);
    }
    return 0.0;
}

namespace {

quad::Result checked(quad::Result r, const char* what) {
    if (!r.converged)
        throw NumericError(std::string(what) + " quadrature did not converge (error estimate " +
                           std::to_string(r.error) + ")");
    return r;
}

// ∫_0^∞ s·profile(s)·cos(u s) ds, with the u = 0 limit handled.
double weighted_cos_transform(const RadialProfile& profile, double u) {
    const auto env = [&](double s) { return s * profile(s); };
    if (u < 1e-12)
        return checked(quad::semi_infinite(env, 0.0), "radial transform").value;
    return checked(quad::oscillatory(env, u, false), "radial transform").value;
}

}  // namespace

double radial_inverse_ft(const RadialProfile& profile, int d, double r) {
    if (d < 1 || d > 3) throw ConfigError("radial transform supports d in {1, 2, 3}");
    if (r < 0.0) throw ConfigError("radius must be nonnegative");
    switch (d) {
        case 1: {
            const auto env = [&](double s) { return profile(s); };
            if (r == 0.0)
                return kSqrt2OverPi * checked(quad::semi_infinite(env, 0.0), "radial transform").value;
            return kSqrt2OverPi *
                   checked(quad::oscillatory(env, r, false), "radial transform").value;
        }
        case 3: {
            if (r == 0.0) {
                const auto env = [&](double s) { return s * s * profile(s); };
                return kSqrt2OverPi * checked(quad::semi_infinite(env, 0.0), "radial transform").value;
            }
            const auto env = [&](double s) { return s * profile(s); };
            return kSqrt2OverPi / r *
                   checked(quad::oscillatory(env, r, true), "radial transform").value;
        }
        default: {
            // d = 2: order-zero oscillatory kernel via its averaged cosine
            // representation, J0(z) = (2/pi)∫_0^{pi/2} cos(z sin t) dt, with
            // fixed 256-point panels in the angle.
            if (r == 0.0) return weighted_cos_transform(profile, 0.0);
            const auto slice = [&](double theta) {
                return weighted_cos_transform(profile, r * std::sin(theta));
            };
            const double inner = quad::gl(slice, 0.0, 0.1, 256);
            const double outer = quad::gl(slice, 0.1, 0.5 * M_PI, 256);
            return (2.0 / M_PI) * (inner + outer);
        }
    }
}

namespace detail {

// Uniform-in-log cubic interpolation table with a quadratic even patch
// below its first abscissa.
struct LogTable {
    double x_min = 0.0, x_max = 0.0;
    double inv_step = 0.0;
    double v0 = 0.0;  // value at x = 0
    Vector values;

    void build(double lo, double hi, Index n) {
        x_min = lo;
        x_max = hi;
        values.resize(n);
        inv_step = (n - 1) / std::log(hi / lo);
    }

    double abscissa(Index i) const {
        return x_min * std::exp(static_cast<double>(i) / inv_step);
    }

    double eval(double x) const {
        if (x <= 0.0) return v0;
        if (x < x_min) {
            const double t = x / x_min;
            return v0 + (values[0] - v0) * t * t;
        }
        const double pos = std::log(x / x_min) * inv_step;
        Index i = static_cast<Index>(std::floor(pos));
        i = std::clamp<Index>(i, 1, values.size() - 3);
        const double u = pos - static_cast<double>(i);
        const double wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
        const double w0 = (u * u - 1.0) * (u - 2.0) / 2.0;
        const double w1 = -u * (u + 1.0) * (u - 2.0) / 2.0;
        const double w2 = u * (u * u - 1.0) / 6.0;
        return wm * values[i - 1] + w0 * values[i] + w1 * values[i + 1] + w2 * values[i + 2];
    }
};

struct PExpTable {
    int dim = 1;
    RadialProfile profile = RadialProfile::exp_power(1.0, 1.0);
    LogTable spatial;

    double eval(double r) const {
        if (r > spatial.x_max) return radial_inverse_ft(profile, dim, r);
        return spatial.eval(r);
    }
};

namespace {

// Radius beyond which exp(-a s^p) * s^(d-1) is below ~1e-22.
double envelope_cutoff(double a, double p, int d) {
    double s = std::pow(52.0 / a, 1.0 / p);
    for (int it = 0; it < 3; ++it)
        s = std::pow((52.0 + (d - 1) * std::log(std::max(s, 2.0))) / a, 1.0 / p);
    return s;
}

}  // namespace

std::shared_ptr<const PExpTable> build_pexp_table(int dim, double p, double alpha,
                                                  double r_max) {
    auto table = std::make_shared<PExpTable>();
    table->dim = dim;
    table->profile = RadialProfile::exp_power(alpha, p);
    const RadialProfile& psi = table->profile;

    constexpr Index kRadialPoints = 2048;
    table->spatial.build(1e-3, r_max, kRadialPoints);
    const double s_max = envelope_cutoff(alpha, p, dim);

    if (dim == 1) {
        quad::FourierEnvelope env([&](double s) { return psi(s); }, s_max);
        table->spatial.v0 = kSqrt2OverPi * env.cos_transform(0.0);
        for (Index i = 0; i < kRadialPoints; ++i)
            table->spatial.values[i] = kSqrt2OverPi * env.cos_transform(table->spatial.abscissa(i));
    } else if (dim == 3) {
        quad::FourierEnvelope env([&](double s) { return s * psi(s); }, s_max);
        table->spatial.v0 = radial_inverse_ft(psi, 3, 0.0);
        for (Index i = 0; i < kRadialPoints; ++i) {
            const double r = table->spatial.abscissa(i);
            table->spatial.values[i] = kSqrt2OverPi / r * env.sin_transform(r);
        }
    } else {
        // d = 2: tabulate the weighted cosine transform once, then take the
        // fixed-panel angular average per radius.
        quad::FourierEnvelope env([&](double s) { return s * psi(s); }, s_max);
        LogTable cj;
        cj.build(1e-4, r_max, 16384);
        cj.v0 = env.cos_transform(0.0);
        for (Index j = 0; j < cj.values.size(); ++j)
            cj.values[j] = env.cos_transform(cj.abscissa(j));
        table->spatial.v0 = cj.v0;
        for (Index i = 0; i < kRadialPoints; ++i) {
            const double r = table->spatial.abscissa(i);
            const auto slice = [&](double theta) { return cj.eval(r * std::sin(theta)); };
            const double inner = quad::gl(slice, 0.0, 0.1, 256);
            const double outer = quad::gl(slice, 0.1, 0.5 * M_PI, 256);
            table->spatial.values[i] = (2.0 / M_PI) * (inner + outer);
        }
    }
    return table;
}

}  // namespace detail

Kernel Kernel::gaussian(int dim, double alpha) {
    if (dim < 1) throw ConfigError("kernel dimension must be positive");
    if (!(alpha > 0.0)) throw ConfigError("gaussian kernel requires alpha > 0");
    Kernel k;
    k.family_ = KernelFamily::Gaussian;
    k.dim_ = dim;
    k.alpha_ = alpha;
    return k;
}

Kernel Kernel::imq(int dim, double nu, double c) {
    if (dim < 1) throw ConfigError("kernel dimension must be positive");
    if (!(nu > 0.5 * dim)) throw ConfigError("imq kernel requires nu > d/2");
    if (!(c >= 1.0)) throw ConfigError("imq kernel requires c >= 1");
    Kernel k;
    k.family_ = KernelFamily::Imq;
    k.dim_ = dim;
    k.nu_ = nu;
    k.c_ = c;
    return k;
}

Kernel Kernel::pexp(int dim, double p, double alpha, double table_rmax) {
    if (dim < 1 || dim > 3) throw ConfigError("pexp kernel supports d in {1, 2, 3}");
    if (!(p > 0.0)) throw ConfigError("pexp kernel requires p > 0");
    if (!(alpha > 0.0)) throw ConfigError("pexp kernel requires alpha > 0");
    if (!(table_rmax > 1.0)) throw ConfigError("pexp table radius must exceed 1");
    Kernel k;
    k.family_ = KernelFamily::PExp;
    k.dim_ = dim;
    k.alpha_ = alpha;
    k.p_ = p;
    k.table_ = detail::build_pexp_table(dim, p, alpha, table_rmax);
    return k;
}

double Kernel::spatial_radial(double r) const {
    switch (family_) {
        case KernelFamily::Gaussian:
            return std::exp(-r * r / (4.0 * alpha_));
        case KernelFamily::Imq:
            return std::pow(r * r + c_ * c_, -nu_);
        case KernelFamily::PExp:
            return table_->eval(r);
    }
    return 0.0;
}

double Kernel::spectral_radial(double s) const {
    switch (family_) {
        case KernelFamily::Gaussian:
            return std::pow(2.0 * alpha_, -0.5 * dim_) * std::exp(-alpha_ * s * s);
        case KernelFamily::PExp:
            return std::exp(-alpha_ * std::pow(s, p_));
        case KernelFamily::Imq: {
            const double order = nu_ - 0.5 * dim_;
            if (s == 0.0) {
                // Small-argument limit of the K_nu form; the spectrum extends
                // continuously to the origin.
                return std::pow(2.0, -0.5 * dim_) * std::tgamma(order) / std::tgamma(nu_) *
                       std::pow(c_, dim_ - 2.0 * nu_);
            }
            const double k = bessel_k(order, c_ * s);
            if (k == 0.0) return 0.0;
            return std::pow(2.0, 1.0 - nu_) / std::tgamma(nu_) * std::pow(s / c_, order) * k;
        }
    }
    return 0.0;
}

double Kernel::spatial(const Vector& x) const {
    if (x.size() != dim_) throw ConfigError("point dimension does not match kernel dimension");
    return spatial_radial(x.norm());
}

double Kernel::spectral(const Vector& xi) const {
    if (xi.size() != dim_) throw ConfigError("point dimension does not match kernel dimension");
    return spectral_radial(xi.norm());
}

RadialProfile Kernel::spectral_profile() const {
    switch (family_) {
        case KernelFamily::Gaussian:
            return RadialProfile::exp_power(alpha_, 2.0, std::pow(2.0 * alpha_, -0.5 * dim_));
        case KernelFamily::PExp:
            return RadialProfile::exp_power(alpha_, p_);
        case KernelFamily::Imq:
            throw ConfigError("imq spectrum has no closed-form radial rule; use spectral_radial");
    }
    throw ConfigError("unknown kernel family");
}

Kernel Kernel::with_parameter(double value) const {
    switch (family_) {
        case KernelFamily::Gaussian:
            return gaussian(dim_, value);
        case KernelFamily::Imq:
            return imq(dim_, nu_, value);
        case KernelFamily::PExp:
            return pexp(dim_, p_, value, table_ ? table_->spatial.x_max : 160.0);
    }
    throw ConfigError("unknown kernel family");
}

double Kernel::parameter() const {
    return family_ == KernelFamily::Imq ? c_ : alpha_;
}

}  // namespace bandrec

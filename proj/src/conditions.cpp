#include "bandrec/conditions.hpp"

#include "bandrec/quadrature.hpp"

#include <cmath>
#include <limits>

namespace bandrec {

namespace {

// Surface measure of the unit sphere in R^d.
double sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

constexpr int kMaxDyadicLevels = 60;
constexpr double kTailCutoff = 1e-16;

}  // namespace

double annulus_sup(const Kernel& kernel, const ConvexBody& body, int j) {
    if (j < 1) throw ConfigError("annulus index must be >= 1");
    if (kernel.dim() != body.dim())
        throw ConfigError("kernel dimension does not match body dimension");
    const double inner_radius = std::ldexp(body.annulus_min_norm(), j);
    return kernel.spectral_radial(inner_radius);
}

double annulus_sup_sampled(const Kernel& kernel, const ConvexBody& body, int j, int samples,
                           std::uint64_t seed) {
    if (j < 1) throw ConfigError("annulus index must be >= 1");
    const int d = body.dim();
    const double box = body.circumscribed_radius();
    SplitMix64 rng(seed);
    double best = 0.0;
    int accepted = 0;
    Vector x(d);
    while (accepted < samples) {
        for (int k = 0; k < d; ++k) x[k] = rng.next_in(-box, box);
        if (!body.contains(x)) continue;
        Vector half = 2.0 * x;
        if (body.contains(half)) continue;  // x in Z/2
        ++accepted;
        best = std::max(best, std::abs(kernel.spectral_radial(std::ldexp(x.norm(), j))));
    }
    return best;
}

namespace {

// Weighted dyadic sum S = sum_j 2^{jd/2} M_j(delta), shared by the (I3)
// check and the regularity table.
struct DyadicSum {
    std::vector<double> terms_m;
    std::vector<double> partial_sums;
    double sum = 0.0;
    double tail_ratio = 0.0;
    bool converged = false;
};

DyadicSum dyadic_weighted_sum(const Kernel& kernel, const ConvexBody& body) {
    DyadicSum out;
    double prev_term = 0.0;
    for (int j = 1; j <= kMaxDyadicLevels; ++j) {
        const double m_j = annulus_sup(kernel, body, j);
        const double term = std::pow(2.0, 0.5 * j * kernel.dim()) * m_j;
        out.terms_m.push_back(m_j);
        out.sum += term;
        out.partial_sums.push_back(out.sum);
        out.tail_ratio = (prev_term > 0.0) ? term / prev_term : 0.0;
        if (out.sum > 0.0 && term < kTailCutoff * out.sum) {
            out.converged = true;
            break;
        }
        if (term == 0.0 && out.sum == 0.0) break;
        prev_term = term;
    }
    return out;
}

}  // namespace

InterpolatorReport check_interpolator(const Kernel& kernel, const ConvexBody& body) {
    if (kernel.dim() != body.dim())
        throw ConfigError("kernel dimension does not match body dimension");
    InterpolatorReport report;
    const int d = kernel.dim();
    const double area = sphere_area(d);

    // (I1): radial quadrature of |phi| and |phi_hat| against s^{d-1}.
    const auto spatial_abs = [&](double s) {
        return std::abs(kernel.spatial_radial(s)) * std::pow(s, d - 1);
    };
    const auto spectral_abs = [&](double s) {
        return std::abs(kernel.spectral_radial(s)) * std::pow(s, d - 1);
    };
    quad::Result spatial_int;
    if (kernel.family() == KernelFamily::PExp) {
        // Integrate over the tabulated range and attach a power-law tail
        // estimate; probing past the table would fall back to per-point
        // transforms at every quadrature node.
        const double r_cap = 150.0;
        spatial_int = quad::adaptive(spatial_abs, 0.0, r_cap);
        const double g1 = std::abs(kernel.spatial_radial(0.5 * r_cap));
        const double g2 = std::abs(kernel.spatial_radial(r_cap));
        if (g2 > 0.0 && g1 > 0.0) {
            const double slope = std::log(g2 / g1) / std::log(2.0);
            if (slope < -static_cast<double>(d)) {
                // ∫_R^∞ C s^{m+d-1} ds with m the fitted log-log slope
                spatial_int.value += g2 * std::pow(r_cap, d) / (-slope - d);
            } else {
                spatial_int.converged = false;
            }
        }
    } else {
        spatial_int = quad::semi_infinite(spatial_abs, 0.0);
    }
    const quad::Result spectral_int = quad::semi_infinite(spectral_abs, 0.0);
    report.spatial_l1 = area * spatial_int.value;
    report.spectral_l1 = area * spectral_int.value;
    report.i1_pass = spatial_int.converged && spectral_int.converged &&
                     std::isfinite(report.spatial_l1) && std::isfinite(report.spectral_l1);

    // (I2): radially decreasing spectra attain their infimum over Z at the
    // circumscribed radius.
    report.epsilon = kernel.spectral_radial(body.circumscribed_radius());
    report.i2_pass = report.epsilon > 0.0;

    // (I3)
    const DyadicSum dyn = dyadic_weighted_sum(kernel, body);
    report.annulus_sup_table = dyn.terms_m;
    report.weighted_partial_sums = dyn.partial_sums;
    report.i3_sum = dyn.sum;
    report.tail_ratio = dyn.tail_ratio;
    report.i3_converged = dyn.converged;
    report.i3_pass = dyn.converged && std::isfinite(dyn.sum);
    return report;
}

RegularityReport regularity_sweep(const Kernel& family_template, const ConvexBody& body,
                                  double beta, const std::vector<double>& param_grid,
                                  bool allow_limiting) {
    const double delta = body.inscribed_radius();
    const double big_r = body.circumscribed_radius();
    const bool limiting = allow_limiting && body.is_limiting_case() && beta == 1.0;
    if (!limiting) {
        if (!(beta > 0.0) || !(beta < delta))
            throw ConfigError("regularity sweep requires 0 < beta < delta");
        if (!(delta <= big_r) || !(big_r <= 1.0))
            throw ConfigError("regularity sweep requires delta <= R <= 1");
    }
    if (param_grid.empty()) throw ConfigError("parameter grid is empty");

    RegularityReport report;
    report.limiting_case = limiting;
    double r1_min = std::numeric_limits<double>::infinity(), r1_max = 0.0;
    bool decreasing = true;
    double prev_r2 = std::numeric_limits<double>::infinity();
    for (double param : param_grid) {
        const Kernel kernel = family_template.with_parameter(param);
        RegularityRow row;
        row.param = param;
        row.sup_outer = kernel.spectral_radial(delta);
        row.inf_band = kernel.spectral_radial(beta);
        row.inf_unit = kernel.spectral_radial(1.0);
        row.weighted_sum = dyadic_weighted_sum(kernel, body).sum;
        if (!(row.sup_outer > 0.0) || !(row.inf_band > 0.0) || !(row.inf_unit > 0.0))
            throw NumericError("regularity sweep hit a nonpositive spectral value at parameter " +
                               std::to_string(param));
        row.ratio_r1 = row.weighted_sum / row.sup_outer;
        row.ratio_r2 = row.sup_outer * row.sup_outer * row.sup_outer /
                       (row.inf_band * row.inf_unit * row.inf_unit);
        r1_min = std::min(r1_min, row.ratio_r1);
        r1_max = std::max(r1_max, row.ratio_r1);
        decreasing = decreasing && (row.ratio_r2 < prev_r2);
        prev_r2 = row.ratio_r2;
        report.rows.push_back(row);
    }
    report.r2_strictly_decreasing = decreasing;
    report.r1_spread = (r1_min > 0.0) ? r1_max / r1_min : std::numeric_limits<double>::infinity();
    return report;
}

ExponentInfo theoretical_exponent(KernelFamily family, double delta, double beta, double p) {
    ExponentInfo info;
    switch (family) {
        case KernelFamily::Gaussian:
            info.exponent = beta * beta + 2.0 - 3.0 * delta * delta;
            info.feasible = delta > std::sqrt(2.0 / 3.0) && delta <= 1.0 && beta > 0.0 &&
                            beta * beta < 3.0 * delta * delta - 2.0;
            break;
        case KernelFamily::Imq:
            info.exponent = beta + 2.0 - 3.0 * delta;
            info.feasible =
                delta > 2.0 / 3.0 && delta <= 1.0 && beta > 0.0 && beta < 3.0 * delta - 2.0;
            break;
        case KernelFamily::PExp: {
            const double dp = std::pow(delta, p), bp = std::pow(beta, p);
            info.exponent = bp + 2.0 - 3.0 * dp;
            info.feasible = 3.0 * dp > 2.0 && delta <= 1.0 && beta > 0.0 && bp < 3.0 * dp - 2.0;
            break;
        }
    }
    return info;
}

SeriesCheck series_bound_check(double D, double a) {
    if (!(D > 1.0)) throw ConfigError("series check requires D > 1");
    SeriesCheck out;
    out.threshold_ok = a >= std::max(std::log(D) / M_LN2, 2.0 / M_LN2);
    out.exp_neg_a = std::exp(-a);
    const double ln_d = std::log(D);
    for (int j = 1; j <= 500; ++j) {
        const double term = std::exp(j * ln_d - a * std::ldexp(1.0, j - 1));
        out.sum += term;
        out.terms = j;
        if (out.sum > 0.0 && term < 1e-16 * out.sum) break;
    }
    out.ratio = (out.exp_neg_a > 0.0) ? out.sum / out.exp_neg_a : 0.0;
    return out;
}

double dyadic_exp_integral(double a) {
    if (!(a > 0.0)) throw ConfigError("dyadic integral requires a > 0");
    const auto integrand = [&](double x) {
        return std::exp(x * M_LN2 - a * std::exp((x - 1.0) * M_LN2));
    };
    const quad::Result res = quad::semi_infinite(integrand, 1.0);
    if (!res.converged) throw NumericError("dyadic integral quadrature did not converge");
    return res.value;
}

double dyadic_exp_integral_closed(double a) {
    return 2.0 / (a * M_LN2) * std::exp(-a);
}

}  // namespace bandrec

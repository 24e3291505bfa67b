#pragma once

#include "bandrec/geometry.hpp"
#include "bandrec/kernels.hpp"
#include "bandrec/types.hpp"

#include <vector>

namespace bandrec {

// Numeric record of the interpolator conditions: integrability of the kernel
// and its spectrum, the spectral floor on Z, and summability of the weighted
// dyadic annulus suprema.
struct InterpolatorReport {
    double spatial_l1 = 0.0;
    double spectral_l1 = 0.0;
    bool i1_pass = false;

    double epsilon = 0.0;  // inf of the spectrum over Z
    bool i2_pass = false;

    std::vector<double> annulus_sup_table;     // M_j, j = 1..J
    std::vector<double> weighted_partial_sums; // partial sums of 2^{jd/2} M_j
    double i3_sum = 0.0;
    double tail_ratio = 0.0;  // last term over its predecessor
    bool i3_converged = false;
    bool i3_pass = false;

    bool pass() const { return i1_pass && i2_pass && i3_pass; }
};

// sup over the dyadically dilated annulus 2^j (Z \ Z/2) of the spectrum; the
// built-in spectra decrease radially, so the supremum sits at the inner
// radius 2^{j-1} * delta.
double annulus_sup(const Kernel& kernel, const ConvexBody& body, int j);

// Generic fallback: seeded rejection sampling of the annulus (4096 points by
// default), for spectra without the radial shortcut.
double annulus_sup_sampled(const Kernel& kernel, const ConvexBody& body, int j,
                           int samples = 4096, std::uint64_t seed = 20240901);

InterpolatorReport check_interpolator(const Kernel& kernel, const ConvexBody& body);

struct RegularityRow {
    double param = 0.0;     // alpha, or c for imq
    double sup_outer = 0.0; // M_alpha = spectrum at delta
    double inf_band = 0.0;  // m_alpha(beta) = spectrum at beta
    double inf_unit = 0.0;  // gamma_alpha = spectrum at 1
    double weighted_sum = 0.0;  // S_alpha
    double ratio_r1 = 0.0;  // S_alpha / M_alpha
    double ratio_r2 = 0.0;  // M_alpha^3 / (m_alpha(beta) gamma_alpha^2)
};

struct RegularityReport {
    std::vector<RegularityRow> rows;
    bool r2_strictly_decreasing = false;
    double r1_spread = 0.0;  // max/min of ratio_r1 across the grid
    bool limiting_case = false;
};

RegularityReport regularity_sweep(const Kernel& family_template, const ConvexBody& body,
                                  double beta, const std::vector<double>& param_grid,
                                  bool allow_limiting = false);

struct ExponentInfo {
    double exponent = 0.0;
    bool feasible = false;
};

// Decay exponent of the closed-form regularity ratio: the sweep parameter
// multiplies this in the exponential.  Negative iff the family is regular
// for the given (delta, beta).
ExponentInfo theoretical_exponent(KernelFamily family, double delta, double beta,
                                  double p = 1.0);

struct SeriesCheck {
    double sum = 0.0;
    double exp_neg_a = 0.0;
    double ratio = 0.0;
    bool threshold_ok = false;  // a >= max(ln D / ln 2, 2 / ln 2)
    int terms = 0;
};

// Direct summation of sum_j D^j exp(-a 2^{j-1}) against exp(-a).
SeriesCheck series_bound_check(double D, double a);

// ∫_1^∞ 2^x exp(-a 2^{x-1}) dx, by quadrature and in closed form.
double dyadic_exp_integral(double a);
double dyadic_exp_integral_closed(double a);

}  // namespace bandrec

#pragma once

#include "bandrec/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace bandrec::quad {

// Gauss-Legendre rule on [-1, 1].
struct Rule {
    Vector nodes;
    Vector weights;
};

// Nodes by Newton iteration on the Legendre recurrence; cached per order.
const Rule& gauss_legendre(int n);

struct Result {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    bool converged = false;
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_segments = 2000;
};

using Fn = std::function<double(double)>;

template <class F>
double gl(F&& f, double a, double b, const Rule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (Index i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

template <class F>
double gl(F&& f, double a, double b, int n) {
    return gl(std::forward<F>(f), a, b, gauss_legendre(n));
}

// Globally adaptive quadrature on [a, b]: worst segment is bisected until the
// summed GL15/GL31 discrepancy meets the tolerance.
Result adaptive(const Fn& f, double a, double b, Options opt = {});

// ∫_a^∞ f, for f with eventually decaying tail: adaptive panels of doubling
// width, stopped once consecutive panels stop contributing.
Result semi_infinite(const Fn& f, double a, Options opt = {});

// ∫_0^∞ g(s)·cos(ω s) ds (or sin).  Half-period panels with repeated
// averaging of the partial sums, which handles both exponential and
// polynomially decaying envelopes.  ω must be > 0.
Result oscillatory(const Fn& g, double omega, bool use_sin, Options opt = {});

// Samples a decaying envelope E on a graded grid over [0, s_max] and
// evaluates ∫_0^{s_max} E(s)·{cos,sin}(u s) ds for arbitrary u by Filon
// quadrature, whose weights stay valid at any frequency.  The grading packs
// fine panels near 0 so envelopes with a fractional-power cusp there (the
// p-exponential profiles with p < 2) are still integrated to ~1e-10.
class FourierEnvelope {
public:
    FourierEnvelope(const Fn& envelope, double s_max);

    double cos_transform(double u) const;
    double sin_transform(double u) const;

private:
    struct Block {
        double a = 0.0;
        double h = 0.0;
        std::vector<double> f;  // odd sample count, even panel count
    };
    double transform(double u, bool use_sin) const;

    std::vector<Block> blocks_;
};

}  // namespace bandrec::quad

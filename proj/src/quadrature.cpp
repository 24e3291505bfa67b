#include "bandrec/quadrature.hpp"

#include <map>
#include <mutex>
#include <queue>

namespace bandrec::quad {

namespace {

Rule compute_rule(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

namespace {

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment make_segment(const Fn& f, double a, double b, const Rule& lo, const Rule& hi) {
    const double v15 = gl(f, a, b, lo);
    const double v31 = gl(f, a, b, hi);
    return {a, b, v31, std::abs(v31 - v15)};
}

}  // namespace

Result adaptive(const Fn& f, double a, double b, Options opt) {
    const Rule& lo = gauss_legendre(15);
    const Rule& hi = gauss_legendre(31);
    std::priority_queue<Segment> segs;
    double value = 0.0, error = 0.0;
    // Start from a few segments so an interior feature cannot hide between
    // the nodes of a single coarse rule.
    const int initial = 4;
    for (int i = 0; i < initial; ++i) {
        const double sa = a + (b - a) * i / initial;
        const double sb = a + (b - a) * (i + 1) / initial;
        const Segment s = make_segment(f, sa, sb, lo, hi);
        value += s.value;
        error += s.error;
        segs.push(s);
    }
    int count = initial;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) &&
           count < opt.max_segments) {
        Segment worst = segs.top();
        segs.pop();
        value -= worst.value;
        error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Segment& s :
             {make_segment(f, worst.a, mid, lo, hi), make_segment(f, mid, worst.b, lo, hi)}) {
            value += s.value;
            error += s.error;
            segs.push(s);
        }
        ++count;
        if (worst.b - worst.a < 1e-15 * std::max(1.0, std::abs(worst.a))) break;
    }
    Result r;
    r.value = value;
    r.error = std::max(error, 0.0);
    r.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    return r;
}

Result semi_infinite(const Fn& f, double a, Options opt) {
    Options panel_opt = opt;
    panel_opt.abs_tol = opt.abs_tol * 0.1;
    double lo = a, width = 1.0;
    double value = 0.0, error = 0.0;
    int quiet = 0;
    for (int p = 0; p < 64; ++p) {
        const Result r = adaptive(f, lo, lo + width, panel_opt);
        value += r.value;
        error += r.error;
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
        quiet = (std::abs(r.value) < 0.1 * tol) ? quiet + 1 : 0;
        if (quiet >= 2) {
            Result out;
            out.value = value;
            out.error = error + std::abs(r.value);
            out.converged = true;
            return out;
        }
        lo += width;
        width *= 2.0;
    }
    Result out;
    out.value = value;
    out.error = error;
    out.converged = false;
    return out;
}

Result oscillatory(const Fn& g, double omega, bool use_sin, Options opt) {
    if (!(omega > 0.0)) throw NumericError("oscillatory quadrature requires omega > 0");
    const auto integrand = [&](double s) {
        return g(s) * (use_sin ? std::sin(omega * s) : std::cos(omega * s));
    };
    // Slow oscillation: half-period panels would dwarf the envelope and the
    // panel quadrature could miss it entirely; doubling panels probe from
    // the origin outward instead.
    if (omega < 0.25) return semi_infinite(integrand, 0.0, opt);
    const double half_period = M_PI / omega;
    Options panel_opt = opt;
    panel_opt.abs_tol = opt.abs_tol * 0.01;

    // Repeated averaging over the trailing window of partial sums.
    constexpr int kWindow = 14;
    std::vector<double> sums;
    double total = 0.0;
    double prev_est = 0.0;
    int stable = 0;
    const int max_panels = 20000;
    for (int k = 0; k < max_panels; ++k) {
        const double a = k * half_period;
        const double b = (k + 1) * half_period;
        const Result r = adaptive(integrand, a, b, panel_opt);
        total += r.value;
        sums.push_back(total);
        if (static_cast<int>(sums.size()) > kWindow) sums.erase(sums.begin());

        std::vector<double> row = sums;
        while (row.size() > 1) {
            for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
            row.pop_back();
        }
        const double est = row[0];
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(est));
        // The averaged estimate converges well before the raw partial sums,
        // but its step-to-step difference alone is a treacherous proxy; also
        // require the raw panel contribution to be below tolerance.
        if (k >= 4 && std::abs(est - prev_est) < 0.5 * tol && std::abs(r.value) < 0.5 * tol) {
            if (++stable >= 2) {
                Result out;
                out.value = est;
                out.error = std::abs(est - prev_est) + 0.5 * std::abs(r.value);
                out.converged = true;
                return out;
            }
        } else {
            stable = 0;
        }
        prev_est = est;
    }
    Result out;
    out.value = prev_est;
    out.error = std::abs(total - prev_est);
    out.converged = false;
    return out;
}

namespace {

// Filon weight functions; series below the switch point to dodge the
// catastrophic cancellation in the closed forms.
struct FilonWeights {
    double alpha, beta, gamma;
};

FilonWeights filon_weights(double theta) {
    FilonWeights w;
    if (std::abs(theta) < 0.0625) {
        const double t2 = theta * theta;
        w.alpha = theta * t2 * (2.0 / 45.0 + t2 * (-2.0 / 315.0 + t2 * (2.0 / 4725.0)));
        w.beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 + t2 * (-4.0 / 105.0 + t2 * (2.0 / 567.0)));
        w.gamma = 4.0 / 3.0 + t2 * (-2.0 / 15.0 + t2 * (1.0 / 210.0));
    } else {
        const double s = std::sin(theta), c = std::cos(theta);
        const double t3 = theta * theta * theta;
        w.alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
        w.beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
        w.gamma = 4.0 * (s - theta * c) / t3;
    }
    return w;
}

}  // namespace

FourierEnvelope::FourierEnvelope(const Fn& envelope, double s_max) {
    if (!(s_max > 0.0)) throw NumericError("FourierEnvelope requires s_max > 0");
    static const double edge_fractions[] = {0.0, 1e-5, 1e-4, 1e-3, 0.01, 0.1, 0.3, 1.0};
    static const int panel_counts[] = {256, 256, 512, 1024, 2048, 2048, 4096};
    for (int b = 0; b < 7; ++b) {
        Block blk;
        blk.a = edge_fractions[b] * s_max;
        const double len = (edge_fractions[b + 1] - edge_fractions[b]) * s_max;
        const int n = panel_counts[b];
        blk.h = len / n;
        blk.f.resize(n + 1);
        for (int i = 0; i <= n; ++i) blk.f[i] = envelope(blk.a + i * blk.h);
        blocks_.push_back(std::move(blk));
    }
}

double FourierEnvelope::transform(double u, bool use_sin) const {
    double total = 0.0;
    for (const Block& blk : blocks_) {
        const int n = static_cast<int>(blk.f.size()) - 1;
        const FilonWeights w = filon_weights(u * blk.h);
        // Rotation recurrence for cos/sin(u x_i), refreshed periodically.
        const double cd = std::cos(u * blk.h), sd = std::sin(u * blk.h);
        double cs = std::cos(u * blk.a), sn = std::sin(u * blk.a);
        double even_sum = 0.0, odd_sum = 0.0;
        double c0 = 0.0, s0 = 0.0, cn = 0.0, sn_end = 0.0;
        for (int i = 0; i <= n; ++i) {
            if ((i & 511) == 0) {
                const double x = u * (blk.a + i * blk.h);
                cs = std::cos(x);
                sn = std::sin(x);
            }
            const double fi = blk.f[i];
            const double trig = use_sin ? sn : cs;
            if (i % 2 == 0)
                even_sum += fi * trig;
            else
                odd_sum += fi * trig;
            if (i == 0) {
                c0 = cs;
                s0 = sn;
            }
            if (i == n) {
                cn = cs;
                sn_end = sn;
            }
            const double cs_next = cs * cd - sn * sd;
            sn = sn * cd + cs * sd;
            cs = cs_next;
        }
        const double f0 = blk.f.front(), fn = blk.f.back();
        double block_val;
        if (use_sin) {
            even_sum -= 0.5 * (f0 * s0 + fn * sn_end);
            block_val = blk.h * (w.alpha * (f0 * c0 - fn * cn) + w.beta * even_sum +
                                 w.gamma * odd_sum);
        } else {
            even_sum -= 0.5 * (f0 * c0 + fn * cn);
            block_val = blk.h * (w.alpha * (fn * sn_end - f0 * s0) + w.beta * even_sum +
                                 w.gamma * odd_sum);
        }
        total += block_val;
    }
    return total;
}

double FourierEnvelope::cos_transform(double u) const { return transform(u, false); }

double FourierEnvelope::sin_transform(double u) const { return transform(u, true); }

}  // namespace bandrec::quad

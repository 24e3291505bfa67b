#include "bandrec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace bandrec {

Kernel KernelSpec::build(double param) const {
    switch (family) {
        case KernelFamily::Gaussian:
            return Kernel::gaussian(dim, param);
        case KernelFamily::Imq:
            return Kernel::imq(dim, nu, param);
        case KernelFamily::PExp:
            return Kernel::pexp(dim, p, param, table_rmax);
    }
    throw ConfigError("unknown kernel family");
}

BandlimitedFunction FunctionSpec::build(int dim) const {
    return synthesize(preset, beta, dim, seed, scale, quad_order);
}

NodeSet NodeSpec::build() const {
    if (axes.empty()) throw ConfigError("node spec has no axes");
    if (axes.size() == 1) {
        const AxisSpec& a = axes.front();
        return NodeSet::kadec_1d(a.h, a.jmin, a.jmax, a.kadec_bound, a.seed);
    }
    std::vector<NodeSet> parts;
    parts.reserve(axes.size());
    for (const AxisSpec& a : axes)
        parts.push_back(NodeSet::kadec_1d(a.h, a.jmin, a.jmax, a.kadec_bound, a.seed));
    return NodeSet::tensor(parts);
}

int SweepConfig::eval_grid_resolved() const {
    if (eval_grid > 0) return eval_grid;
    return nodes.dim() >= 2 ? 128 : 2048;
}

int SweepConfig::l2_quad_order_resolved() const {
    if (l2_quad_order > 0) return l2_quad_order;
    return nodes.dim() >= 2 ? 64 : 200;
}

void SweepConfig::validate() const {
    const int d = nodes.dim();
    if (d < 1) throw ConfigError("sweep config has no node axes");
    if (body.dim() != d) throw ConfigError("body dimension does not match node dimension");
    if (kernel.dim != d) throw ConfigError("kernel dimension does not match node dimension");
    const double delta = body.inscribed_radius();
    const bool limiting = limiting_case && body.is_limiting_case() && function.beta == 1.0;
    if (!limiting) {
        if (!body.theorem_mode_ok())
            throw ConfigError("body violates delta < 1 <= ... theorem geometry (delta B2 in Z in B2)");
        if (!(function.beta > 0.0) || !(function.beta < delta))
            throw ConfigError("sweep requires 0 < beta < delta (or the flagged limiting case)");
    }
    if (param_grid.empty()) throw ConfigError("alpha_grid must not be empty");
    for (std::size_t i = 1; i < param_grid.size(); ++i)
        if (!(param_grid[i] > param_grid[i - 1]))
            throw ConfigError("alpha_grid must be strictly increasing");
    if (!(param_grid.front() > 0.0)) throw ConfigError("alpha_grid entries must be positive");
    if (!(eval_window_fraction > 0.0) || !(eval_window_fraction < 1.0))
        throw ConfigError("eval_window_fraction must lie strictly inside (0, 1)");
    if (eval_grid < 0 || (eval_grid > 0 && eval_grid < 2))
        throw ConfigError("eval_grid must be >= 2");
    if (l2_quad_order < 0 || (l2_quad_order > 0 && l2_quad_order < 2))
        throw ConfigError("l2_quad_order must be >= 2");
}

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string sanitize_message(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

// Uniform evaluation grid over the central window, flattened row-major.
struct EvalGrid {
    Matrix points;  // n_total x d
};

EvalGrid make_grid(const Vector& lo, const Vector& hi, int per_axis) {
    const int d = static_cast<int>(lo.size());
    EvalGrid grid;
    if (d == 1) {
        grid.points.resize(per_axis, 1);
        for (int i = 0; i < per_axis; ++i)
            grid.points(i, 0) = lo[0] + (hi[0] - lo[0]) * i / (per_axis - 1);
    } else {
        Index total = 1;
        for (int k = 0; k < d; ++k) total *= per_axis;
        grid.points.resize(total, d);
        for (Index idx = 0; idx < total; ++idx) {
            Index rem = idx;
            for (int k = d - 1; k >= 0; --k) {
                const Index i = rem % per_axis;
                rem /= per_axis;
                grid.points(idx, k) = lo[k] + (hi[k] - lo[k]) * i / (per_axis - 1);
            }
        }
    }
    return grid;
}

// Tensor Gauss-Legendre rule over the window.
struct WindowRule {
    Matrix points;  // n_total x d
    Vector weights;
};

WindowRule make_window_rule(const Vector& lo, const Vector& hi, int order) {
    const int d = static_cast<int>(lo.size());
    const quad::Rule& rule = quad::gauss_legendre(order);
    WindowRule out;
    Index total = 1;
    for (int k = 0; k < d; ++k) total *= order;
    out.points.resize(total, d);
    out.weights = Vector::Ones(total);
    for (Index idx = 0; idx < total; ++idx) {
        Index rem = idx;
        for (int k = d - 1; k >= 0; --k) {
            const Index i = rem % order;
            rem /= order;
            const double mid = 0.5 * (lo[k] + hi[k]);
            const double half = 0.5 * (hi[k] - lo[k]);
            out.points(idx, k) = mid + half * rule.nodes[i];
            out.weights[idx] *= half * rule.weights[i];
        }
    }
    return out;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
    config.validate();
    SweepReport report;
    report.config = config;
    report.config_json = canonical_config_json(config);
    report.timestamp = iso_timestamp();

    const NodeSet nodes = config.nodes.build();
    if (nodes.size() < 2) throw ConfigError("sweep requires at least two nodes");
    const BandlimitedFunction f = config.function.build(nodes.dim());
    const Vector samples = f.sample(nodes);

    const Vector hull_lo = nodes.hull_min(), hull_hi = nodes.hull_max();
    if (((hull_hi - hull_lo).array() <= 0.0).any())
        throw ConfigError("node hull is degenerate; cannot place an evaluation window");
    const Vector center = 0.5 * (hull_lo + hull_hi);
    const Vector window_half = 0.5 * config.eval_window_fraction * (hull_hi - hull_lo);
    const Vector win_lo = center - window_half, win_hi = center + window_half;

    const EvalGrid grid = make_grid(win_lo, win_hi, config.eval_grid_resolved());
    Vector f_grid(grid.points.rows());
    for (Index i = 0; i < grid.points.rows(); ++i)
        f_grid[i] = f.eval(grid.points.row(i).transpose());

    const WindowRule l2_rule = make_window_rule(win_lo, win_hi, config.l2_quad_order_resolved());
    Vector f_quad(l2_rule.points.rows());
    for (Index i = 0; i < l2_rule.points.rows(); ++i)
        f_quad[i] = f.eval(l2_rule.points.row(i).transpose());

    const double delta = config.body.inscribed_radius();
    const double beta = config.function.beta;

    for (double param : config.param_grid) {
        SweepRow row;
        row.param = param;
        try {
            const Kernel kernel = config.kernel.build(param);
            const InterpolatorReport check = check_interpolator(kernel, config.body);
            if (!check.pass())
                throw NumericError("interpolator conditions failed at parameter " +
                                   std::to_string(param));

            CollocationSystem system = assemble(kernel, nodes);
            const Interpolant interp = solve(system, samples);
            row.node_residual = interp.node_residual();
            row.jitter = interp.jitter();
            row.condition_estimate = interp.condition_estimate();

            double sup_err = 0.0;
            for (Index i = 0; i < grid.points.rows(); ++i)
                sup_err = std::max(
                    sup_err, std::abs(interp.evaluate(grid.points.row(i).transpose()) - f_grid[i]));
            row.sup_error = sup_err;

            double l2_sq = 0.0;
            for (Index i = 0; i < l2_rule.points.rows(); ++i) {
                const double diff = interp.evaluate(l2_rule.points.row(i).transpose()) - f_quad[i];
                l2_sq += l2_rule.weights[i] * diff * diff;
            }
            row.l2_error = std::sqrt(std::max(l2_sq, 0.0));

            const double m_sup = kernel.spectral_radial(delta);
            const double m_inf = kernel.spectral_radial(beta);
            const double g_inf = kernel.spectral_radial(1.0);
            row.ratio_r2 = m_sup * m_sup * m_sup / (m_inf * g_inf * g_inf);
        } catch (const NumericError& err) {
            row.failed = true;
            row.message = sanitize_message(err.what());
        }
        report.rows.push_back(row);
    }
    return report;
}

FitResult fit_rate(const SweepReport& report) {
    FitResult fit;
    const SweepConfig& cfg = report.config;
    const ExponentInfo info = theoretical_exponent(
        cfg.kernel.family, cfg.body.inscribed_radius(), cfg.function.beta, cfg.kernel.p);
    fit.theoretical_exponent = info.exponent;
    fit.feasible = info.feasible;
    fit.rate_exempt = !info.feasible;

    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& row : report.rows) {
        if (row.failed) continue;
        const double floor =
            std::max(1e-10, 100.0 * row.condition_estimate * std::numeric_limits<double>::epsilon());
        if (!(row.sup_error > floor)) continue;
        pts.emplace_back(row.param, std::log(row.sup_error));
    }
    fit.usable_rows = static_cast<int>(pts.size());
    if (pts.size() < 3) {
        fit.status = FitStatus::TooFewUsableRows;
        fit.message = "too few usable rows above the error floor (" +
                      std::to_string(pts.size()) + " of " + std::to_string(report.rows.size()) + ")";
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) {
        fit.status = FitStatus::TooFewUsableRows;
        fit.message = "degenerate parameter grid";
        return fit;
    }
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.param_lo = pts.front().first;
    fit.param_hi = pts.back().first;
    fit.status = FitStatus::Ok;
    fit.pass = fit.rate_exempt || fit.slope <= fit.theoretical_exponent + 0.05;
    if (!fit.pass)
        fit.message = "fitted slope " + std::to_string(fit.slope) + " exceeds bound " +
                      std::to_string(fit.theoretical_exponent + 0.05);
    return fit;
}

namespace {

const char* kCsvHeader =
    "alpha,sup_error,l2_error,node_residual,jitter,condition_estimate,ratio_R2,failed,message";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_report(const SweepReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open report file for writing: " + path);
    out << "# bandrec sweep report v1\n";
    out << "# version: " << report.version << "\n";
    out << "# timestamp: " << report.timestamp << "\n";
    out << "# config: " << report.config_json << "\n";
    out << kCsvHeader << "\n";
    for (const SweepRow& row : report.rows) {
        out << format_double(row.param) << ',' << format_double(row.sup_error) << ','
            << format_double(row.l2_error) << ',' << format_double(row.node_residual) << ','
            << format_double(row.jitter) << ',' << format_double(row.condition_estimate) << ','
            << format_double(row.ratio_r2) << ',' << (row.failed ? 1 : 0) << ','
            << sanitize_message(row.message) << "\n";
    }
    if (!out) throw ConfigError("failed while writing report file: " + path);
}

SweepReport read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open report file: " + path);
    SweepReport report;
    std::string line;
    bool header_seen = false;
    int row_number = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# version: ", 0) == 0) {
            report.version = line.substr(11);
            continue;
        }
        if (line.rfind("# timestamp: ", 0) == 0) {
            report.timestamp = line.substr(13);
            continue;
        }
        if (line.rfind("# config: ", 0) == 0) {
            report.config_json = line.substr(10);
            report.config = parse_sweep_config_json(report.config_json);
            continue;
        }
        if (!line.empty() && line[0] == '#') continue;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader) {
                // Name the first expected column that is absent.
                std::stringstream expected(kCsvHeader), got(line);
                std::string ecol;
                std::vector<std::string> have;
                std::string gcol;
                while (std::getline(got, gcol, ',')) have.push_back(gcol);
                while (std::getline(expected, ecol, ',')) {
                    if (std::find(have.begin(), have.end(), ecol) == have.end())
                        throw ConfigError("report parse error: missing column '" + ecol + "'");
                }
                throw ConfigError("report parse error: unexpected column layout: " + line);
            }
            header_seen = true;
            continue;
        }
        ++row_number;
        std::stringstream ss(line);
        std::string field;
        SweepRow row;
        const char* names[] = {"alpha",  "sup_error",          "l2_error",
                               "node_residual", "jitter", "condition_estimate",
                               "ratio_R2",      "failed"};
        double* slots[] = {&row.param,  &row.sup_error,          &row.l2_error,
                           &row.node_residual, &row.jitter, &row.condition_estimate,
                           &row.ratio_r2,      nullptr};
        for (int col = 0; col < 8; ++col) {
            if (!std::getline(ss, field, ','))
                throw ConfigError("report parse error at row " + std::to_string(row_number) +
                                  ": missing column '" + names[col] + "'");
            try {
                if (slots[col])
                    *slots[col] = std::stod(field);
                else
                    row.failed = std::stoi(field) != 0;
            } catch (const std::exception&) {
                throw ConfigError("report parse error at row " + std::to_string(row_number) +
                                  ", column '" + names[col] + "': bad value '" + field + "'");
            }
        }
        std::getline(ss, row.message);
        report.rows.push_back(row);
    }
    if (!header_seen && !report.rows.empty())
        throw ConfigError("report parse error: missing header row");
    return report;
}

}  // namespace bandrec

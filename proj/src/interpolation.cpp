#include "bandrec/interpolation.hpp"

#include <cmath>
#include <limits>

namespace bandrec {

CollocationSystem::CollocationSystem(Kernel kernel, NodeSet nodes)
    : kernel_(std::move(kernel)), nodes_(std::move(nodes)) {
    if (kernel_.dim() != nodes_.dim())
        throw ConfigError("kernel dimension does not match node dimension");
    const Index n = nodes_.size();
    matrix_.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        matrix_(i, i) = kernel_.spatial_radial(0.0);
        for (Index j = i + 1; j < n; ++j) {
            const double r = (nodes_.points().row(i) - nodes_.points().row(j)).norm();
            const double v = kernel_.spatial_radial(r);
            matrix_(i, j) = v;
            matrix_(j, i) = v;
        }
    }
}

CollocationSystem assemble(const Kernel& kernel, const NodeSet& nodes) {
    return CollocationSystem(kernel, nodes);
}

void CollocationSystem::factorize() {
    if (factorized_) return;
    llt_.compute(matrix_);
    if (llt_.info() != Eigen::Success) {
        jitter_ = 1e-12 * matrix_.trace() / static_cast<double>(matrix_.rows());
        Matrix jittered = matrix_;
        jittered.diagonal().array() += jitter_;
        llt_.compute(jittered);
        if (llt_.info() != Eigen::Success)
            throw NumericError(
                "collocation factorization failed after jitter retry; the system is "
                "numerically indefinite (nodes too close or kernel too flat)");
    }
    const Vector d = llt_.matrixLLT().diagonal();
    const double dmax = d.maxCoeff(), dmin = d.minCoeff();
    condition_estimate_ = (dmin > 0.0) ? (dmax / dmin) * (dmax / dmin)
                                       : std::numeric_limits<double>::infinity();
    factorized_ = true;
}

Vector CollocationSystem::solve_coefficients(const Vector& samples) {
    if (samples.size() != nodes_.size())
        throw ConfigError("sample count does not match node count");
    factorize();
    Vector a = llt_.solve(samples);
    const double residual = (matrix_ * a - samples).cwiseAbs().maxCoeff();
    const double tol = 1e-8 * (1.0 + samples.cwiseAbs().maxCoeff());
    if (!(residual <= tol))
        throw NumericError("node residual " + std::to_string(residual) +
                           " exceeds solver tolerance " + std::to_string(tol) +
                           " (condition estimate " + std::to_string(condition_estimate_) + ")");
    return a;
}

Interpolant::Interpolant(Kernel kernel, NodeSet nodes, Vector coefficients, Vector samples,
                         double node_residual, double jitter, double condition_estimate)
    : kernel_(std::move(kernel)), nodes_(std::move(nodes)),
      coefficients_(std::move(coefficients)), samples_(std::move(samples)),
      node_residual_(node_residual), jitter_(jitter), condition_estimate_(condition_estimate) {}

double Interpolant::evaluate(const Vector& x) const {
    if (x.size() != nodes_.dim())
        throw ConfigError("point dimension does not match interpolant dimension");
    double sum = 0.0;
    for (Index j = 0; j < nodes_.size(); ++j) {
        const double r = (nodes_.points().row(j).transpose() - x).norm();
        sum += coefficients_[j] * kernel_.spatial_radial(r);
    }
    return sum;
}

double Interpolant::evaluate1(double x) const {
    Vector v(1);
    v[0] = x;
    return evaluate(v);
}

Interpolant solve(CollocationSystem& system, const Vector& samples) {
    Vector a = system.solve_coefficients(samples);
    const double residual = (system.matrix() * a - samples).cwiseAbs().maxCoeff();
    return Interpolant(system.kernel(), system.nodes(), std::move(a), samples, residual,
                       system.jitter(), system.condition_estimate());
}

AveragedApproximant::AveragedApproximant(std::vector<Interpolant> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw ConfigError("averaged approximant requires at least one part");
}

double AveragedApproximant::evaluate(const Vector& x) const {
    double sum = 0.0;
    for (const Interpolant& part : parts_) sum += part.evaluate(x);
    return sum / static_cast<double>(parts_.size());
}

AveragedApproximant averaged(const Kernel& kernel, const std::vector<NodeSet>& node_sets,
                             const BandlimitedFunction& f) {
    if (node_sets.empty()) throw ConfigError("averaged approximant requires node sets");
    std::vector<Interpolant> parts;
    parts.reserve(node_sets.size());
    for (std::size_t n = 0; n < node_sets.size(); ++n) {
        try {
            CollocationSystem system = assemble(kernel, node_sets[n]);
            parts.push_back(solve(system, f.sample(node_sets[n])));
        } catch (const NumericError& err) {
            throw NumericError("node set " + std::to_string(n + 1) + " of " +
                               std::to_string(node_sets.size()) + ": " + err.what());
        }
    }
    return AveragedApproximant(std::move(parts));
}

}  // namespace bandrec

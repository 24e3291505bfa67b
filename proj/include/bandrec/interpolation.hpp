#pragma once

#include "bandrec/bandlimited.hpp"
#include "bandrec/kernels.hpp"
#include "bandrec/nodes.hpp"
#include "bandrec/types.hpp"

#include <Eigen/Cholesky>

#include <vector>

namespace bandrec {

// Dense symmetric collocation system A_{mn} = phi(x_m - x_n).  Assembly and
// factorization are single-owner mutations; a factorized system is read-only
// afterwards.
class CollocationSystem {
public:
    CollocationSystem(Kernel kernel, NodeSet nodes);

    const Matrix& matrix() const { return matrix_; }
    const Kernel& kernel() const { return kernel_; }
    const NodeSet& nodes() const { return nodes_; }

    // Cholesky factorization; on failure retries once with diagonal jitter
    // 1e-12 * trace(A)/N, then fails hard.  Idempotent.
    void factorize();
    bool factorized() const { return factorized_; }

    double jitter() const { return jitter_; }
    // Cheap surrogate from the Cholesky diagonal extremes.
    double condition_estimate() const { return condition_estimate_; }

    // Solves A a = samples and verifies the node residual against the
    // unjittered matrix; throws NumericError when the residual exceeds
    // 1e-8 * (1 + |samples|_inf).
    Vector solve_coefficients(const Vector& samples);

private:
    Kernel kernel_;
    NodeSet nodes_;
    Matrix matrix_;
    Eigen::LLT<Matrix> llt_;
    bool factorized_ = false;
    double jitter_ = 0.0;
    double condition_estimate_ = 0.0;
};

CollocationSystem assemble(const Kernel& kernel, const NodeSet& nodes);

// Solved interpolant sum_j a_j phi(. - x_j), bound to its kernel and nodes.
class Interpolant {
public:
    Interpolant(Kernel kernel, NodeSet nodes, Vector coefficients, Vector samples,
                double node_residual, double jitter, double condition_estimate);

    double evaluate(const Vector& x) const;
    double evaluate1(double x) const;

    const Kernel& kernel() const { return kernel_; }
    const NodeSet& nodes() const { return nodes_; }
    const Vector& coefficients() const { return coefficients_; }
    const Vector& samples() const { return samples_; }
    double node_residual() const { return node_residual_; }
    double jitter() const { return jitter_; }
    double condition_estimate() const { return condition_estimate_; }

private:
    Kernel kernel_;
    NodeSet nodes_;
    Vector coefficients_;
    Vector samples_;
    double node_residual_;
    double jitter_;
    double condition_estimate_;
};

Interpolant solve(CollocationSystem& system, const Vector& samples);

// Pointwise mean of one interpolant per node set (not itself an interpolant
// at the union of the sets).
class AveragedApproximant {
public:
    explicit AveragedApproximant(std::vector<Interpolant> parts);

    double evaluate(const Vector& x) const;
    const std::vector<Interpolant>& parts() const { return parts_; }

private:
    std::vector<Interpolant> parts_;
};

AveragedApproximant averaged(const Kernel& kernel, const std::vector<NodeSet>& node_sets,
                             const BandlimitedFunction& f);

}  // namespace bandrec

#pragma once

#include "bandrec/types.hpp"

#include <cstdint>
#include <vector>

namespace bandrec {

// Generator metadata for one axis of a Kadec-perturbed lattice.
struct AxisSpec {
    double h = 1.0;          // band half-width; lattice step is pi/h
    long jmin = 0, jmax = 0;
    double kadec_bound = 0.0;  // L < 1/4
    std::uint64_t seed = 0;
};

// Finite scattered node list with its separation constant.  Immutable after
// generation.
class NodeSet {
public:
    // x_j = (pi/h)(j + eps_j) with eps_j drawn uniformly from [-L, L].
    // L < 1/4 keeps the perturbed exponentials a Riesz basis for L2(-h, h).
    static NodeSet kadec_1d(double h, long jmin, long jmax, double L, std::uint64_t seed);

    // Cartesian product of 1-d node sets; first axis varies slowest.
    static NodeSet tensor(const std::vector<NodeSet>& axes);

    int dim() const { return static_cast<int>(points_.cols()); }
    Index size() const { return points_.rows(); }
    const Matrix& points() const { return points_; }
    Vector point(Index i) const { return points_.row(i).transpose(); }

    // Exact minimum pairwise Euclidean distance.
    double separation() const { return separation_; }

    const std::vector<AxisSpec>& axes() const { return axes_; }

    // Per-axis [min, max] of the node hull.
    Vector hull_min() const { return points_.colwise().minCoeff().transpose(); }
    Vector hull_max() const { return points_.colwise().maxCoeff().transpose(); }

private:
    NodeSet(Matrix points, std::vector<AxisSpec> axes);

    static double compute_separation(const Matrix& points);

    Matrix points_;  // size x dim
    std::vector<AxisSpec> axes_;
    double separation_ = 0.0;
};

}  // namespace bandrec

#include "bandrec/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandrec {

NodeSet::NodeSet(Matrix points, std::vector<AxisSpec> axes)
    : points_(std::move(points)), axes_(std::move(axes)) {
    if (points_.rows() < 1) throw ConfigError("node set must not be empty");
    if (points_.rows() >= 2) {
        separation_ = compute_separation(points_);
        if (!(separation_ > 0.0)) throw ConfigError("node set contains duplicate points");
    } else {
        separation_ = std::numeric_limits<double>::infinity();
    }
}

NodeSet NodeSet::kadec_1d(double h, long jmin, long jmax, double L, std::uint64_t seed) {
    if (!(h > 0.0)) throw ConfigError("kadec generator requires h > 0");
    if (!(L >= 0.0) || L >= 0.25)
        throw ConfigError("kadec bound must satisfy 0 <= L < 1/4");
    if (jmin > jmax) throw ConfigError("kadec index range is empty");
    const long n = jmax - jmin + 1;
    const double step = M_PI / h;
    Matrix pts(n, 1);
    SplitMix64 rng(seed);
    for (long i = 0; i < n; ++i) {
        const double j = static_cast<double>(jmin + i);
        const double eps = (L > 0.0) ? rng.next_in(-L, L) : 0.0;
        pts(i, 0) = step * (j + eps);
    }
    AxisSpec spec;
    spec.h = h;
    spec.jmin = jmin;
    spec.jmax = jmax;
    spec.kadec_bound = L;
    spec.seed = seed;
    return NodeSet(std::move(pts), {spec});
}

NodeSet NodeSet::tensor(const std::vector<NodeSet>& axes) {
    if (axes.empty()) throw ConfigError("tensor product requires at least one axis");
    Index total = 1;
    std::vector<AxisSpec> meta;
    for (const NodeSet& axis : axes) {
        if (axis.dim() != 1) throw ConfigError("tensor product axes must be one-dimensional");
        if (axis.size() == 0) throw ConfigError("tensor product axis is empty");
        total *= axis.size();
        meta.push_back(axis.axes().front());
    }
    const int d = static_cast<int>(axes.size());
    Matrix pts(total, d);
    for (Index idx = 0; idx < total; ++idx) {
        Index rem = idx;
        for (int ax = d - 1; ax >= 0; --ax) {
            const Index n = axes[ax].size();
            pts(idx, ax) = axes[ax].points()(rem % n, 0);
            rem /= n;
        }
    }
    return NodeSet(std::move(pts), std::move(meta));
}

double NodeSet::compute_separation(const Matrix& points) {
    const Index n = points.rows();
    if (points.cols() == 1) {
        std::vector<double> xs(points.col(0).data(), points.col(0).data() + n);
        std::sort(xs.begin(), xs.end());
        double best = std::numeric_limits<double>::infinity();
        for (Index i = 0; i + 1 < n; ++i) best = std::min(best, xs[i + 1] - xs[i]);
        return best;
    }
    double best_sq = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            best_sq = std::min(best_sq, (points.row(i) - points.row(j)).squaredNorm());
    return std::sqrt(best_sq);
}

}  // namespace bandrec

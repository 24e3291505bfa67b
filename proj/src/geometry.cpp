#include "bandrec/geometry.hpp"

#include <cmath>
#include <limits>

namespace bandrec {

namespace {
constexpr double kBoundarySlack = 32.0 * std::numeric_limits<double>::epsilon();
}

ConvexBody::ConvexBody(Kind kind, int dim, double size)
    : kind_(kind), dim_(dim), size_(size) {
    if (dim < 1) throw ConfigError("body dimension must be positive");
    if (!(size > 0.0)) throw ConfigError("body size parameter must be positive");
    inscribed_ = size;
    circumscribed_ = (kind == Kind::Ball) ? size : size * std::sqrt(static_cast<double>(dim));
}

ConvexBody ConvexBody::ball(int dim, double radius) {
    return ConvexBody(Kind::Ball, dim, radius);
}

ConvexBody ConvexBody::box(int dim, double half_width) {
    return ConvexBody(Kind::Box, dim, half_width);
}

bool ConvexBody::contains(const Vector& x) const {
    if (x.size() != dim_)
        throw ConfigError("point dimension does not match body dimension");
    if (kind_ == Kind::Ball) {
        return x.squaredNorm() <= size_ * size_ * (1.0 + kBoundarySlack);
    }
    const double bound = size_ * (1.0 + kBoundarySlack);
    return (x.cwiseAbs().array() <= bound).all();
}

bool ConvexBody::is_limiting_case() const {
    return kind_ == Kind::Ball && size_ == 1.0;
}

bool ConvexBody::theorem_mode_ok() const {
    if (is_limiting_case()) return true;
    return circumscribed_ <= 1.0 && inscribed_ < 1.0;
}

}  // namespace bandrec

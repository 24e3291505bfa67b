#pragma once

#include "bandrec/types.hpp"

namespace bandrec {

// Origin-symmetric convex body Z with delta*B2 ⊆ Z ⊆ R*B2.  Only Euclidean
// balls and axis-aligned boxes with uniform half-width are constructible;
// those are the shapes for which explicit Riesz-basis node constructions
// exist at desk scale.
class ConvexBody {
public:
    enum class Kind { Ball, Box };

    static ConvexBody ball(int dim, double radius);
    static ConvexBody box(int dim, double half_width);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double size() const { return size_; }

    double inscribed_radius() const { return inscribed_; }
    double circumscribed_radius() const { return circumscribed_; }
    // Smallest Euclidean norm attained on the closure of Z \ (1/2)Z; this is
    // where a radially decreasing spectrum attains its annulus supremum.
    double annulus_min_norm() const { return 0.5 * inscribed_; }

    // Closed membership test.  Points within a few ulps of the boundary are
    // treated as boundary points so that exact boundary probes are stable.
    bool contains(const Vector& x) const;

    // Limiting case Z = B2 (delta = R = 1), allowed but flagged.
    bool is_limiting_case() const;
    // delta < 1 and R <= 1 (with the limiting case also admitted).
    bool theorem_mode_ok() const;

private:
    ConvexBody(Kind kind, int dim, double size);

    Kind kind_;
    int dim_;
    double size_;
    double inscribed_;
    double circumscribed_;
};

}  // namespace bandrec

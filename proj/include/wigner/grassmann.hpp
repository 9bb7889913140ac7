#pragma once

#include <vector>

#include "wigner/subspace.hpp"

namespace wigner {

// Star [X>_k: all k-dimensional subspaces containing a fixed (k-1)-subspace.
struct Star {
    Frame base;
    explicit Star(Frame b);
};

// Top <Y]_k: all k-dimensional subspaces inside a fixed (k+1)-subspace.
struct Top {
    Frame roof;
    explicit Top(Frame r);
};

// A path in the Grassmann graph whose edge count equals the distance
// between its endpoints; consecutive vertices are adjacent.
class GeodesicPath {
public:
    explicit GeodesicPath(std::vector<Frame> vertices);
    const std::vector<Frame>& vertices() const { return vertices_; }
    int edge_count() const { return static_cast<int>(vertices_.size()) - 1; }

private:
    std::vector<Frame> vertices_;
};

// Grassmann graph distance d_k(X, Y) = k - dim(X ∩ Y).
int distance(const Frame& x, const Frame& y);

bool is_adjacent(const Frame& x, const Frame& y);
bool is_ortho_adjacent(const Frame& x, const Frame& y, double compat_tol = kCompatTol);

// Geodesic from X to Y obtained by swapping one basis vector per step.
GeodesicPath build_geodesic(const Frame& x, const Frame& y);

// For compatible X, Y with 2k <= n: a geodesic of edge-length k from X to a
// subspace orthogonal to X, passing through Y, with all vertices mutually
// compatible.
GeodesicPath geodesic_through_to_orthogonal(const Frame& x, const Frame& y);

// The k+1 hyperplanes of the roof spanned by deleting one roof column each;
// a maximal compatible subset of the top.
std::vector<Frame> max_compatible_in_top(const Top& top);

// base ⊕ span(v_i) over an orthonormal basis v_i of the complement of base
// inside `ambient`; a maximal compatible subset of the star.
std::vector<Frame> max_compatible_in_star(const Star& star, const Frame& ambient);

}  // namespace wigner

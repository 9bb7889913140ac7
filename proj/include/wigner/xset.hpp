#pragma once

#include <cstdint>
#include <vector>

#include "wigner/subspace.hpp"

namespace wigner {

// Verified sample of the set of Z with P_X + P_Y - P_Z a rank-k projection.
struct XSetSample {
    Frame x;
    Frame y;
    std::vector<Frame> points;
    std::uint64_t seed = 0;
};

enum class XSetClass { CompatibleFullInterval, NonCompatibleAdjacentCurve, Other };

// True iff P_X + P_Y - P_Z is a projection of rank k at tol.
bool xset_contains(const Frame& x, const Frame& y, const Frame& z, double tol);

// Seeded local search for members inside [X ∩ Y, X + Y]_k; may return fewer
// than `count` points. Every returned point passes xset_contains.
XSetSample xset_sample(const Frame& x, const Frame& y, int count,
                       std::uint64_t seed, double tol);

// Real dimension of the member set at a member, from the rank deficiency of
// the idempotency-constraint Jacobian on the containment-constrained tangent
// space, cross-checked against a local-PCA estimate. Throws if the two
// estimators disagree.
int xset_local_dimension(const Frame& x, const Frame& y, const Frame& at, double tol);

XSetClass geher_classify(const Frame& x, const Frame& y, double tol);

const char* xset_class_name(XSetClass c);

}  // namespace wigner

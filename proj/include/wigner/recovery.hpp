#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wigner/maps.hpp"

namespace wigner {

using SubspaceMap = std::function<Frame(const Frame&)>;

enum class ClassificationTag { IsometryInduced, OrthoComplementCase, WAugmented, Rejected };

struct Classification {
    ClassificationTag tag = ClassificationTag::Rejected;
    std::optional<SemilinearMap> u;
    std::optional<Frame> w;
    std::vector<ConditionReport> reports;
    double residual = std::numeric_limits<double>::infinity();
    std::string reason;               // nonempty iff Rejected
    std::vector<std::string> notes;
    int k = 0;
    std::optional<int> m;
};

struct VerificationReport {
    double max_residual = 0.0;
    double matrix_diff = 0.0;
    bool accepted = false;
};

// X |-> image of L(P_X): the subspace map induced by an operator that sends
// rank-k projections to projections. Each call re-verifies that the image is
// a projection of the rank fixed by the first call.
SubspaceMap induced_map(const OperatorMap& map, int k);

// From f_i on rank-i subspaces to f_{i-1} on rank-(i-1) subspaces: the image
// of X is the intersection of f_i over random star elements Z ⊃ X;
// recomputed with a disjoint sample set and required to agree.
SubspaceMap descend_one_level(const SubspaceMap& f_i, int i, int samples,
                              std::uint64_t seed);

// The common subspace of all f_1 images: intersect over at least n random
// lines, then re-verify containment on 50 fresh ones.
Frame extract_W(const SubspaceMap& f_1, int n, int samples, std::uint64_t seed);

// Constructive reconstruction of the semilinear isometry inducing a map of
// lines to lines: pick representatives of the images of the basis lines,
// normalize their relative scale against the images of [e_0 + e_j], and read
// the twist off the image of [e_0 + i e_1].
SemilinearMap reconstruct_semilinear(const SubspaceMap& g, int n, double tol);

// Full decomposition pipeline: condition checks, star descent, W extraction,
// isometry reconstruction, model assembly, and residual validation. A result
// is only tagged when the rebuilt model reproduces the input map.
Classification classify_operator(const OperatorMap& map, int k, int samples,
                                 std::uint64_t seed, double tol);

// Independent re-validation: rebuild the model from (tag, U, W) and measure
// fresh-probe residuals plus the entrywise matrix difference.
VerificationReport verify_classification(const OperatorMap& map,
                                         const Classification& result, int probes,
                                         std::uint64_t seed);

// Model map corresponding to a non-rejected classification.
OperatorMap classification_model(const OperatorMap& map, const Classification& result);

const char* classification_tag_name(ClassificationTag tag);

}  // namespace wigner

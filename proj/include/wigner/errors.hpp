#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

// Base class for all failures raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WIGNER_DECLARE_ERROR(Name)                                        \
    class Name : public Error {                                          \
    public:                                                               \
        explicit Name(const std::string& what) : Error(what) {}           \
    }

WIGNER_DECLARE_ERROR(NonHermitianInput);
WIGNER_DECLARE_ERROR(DimensionMismatch);
WIGNER_DECLARE_ERROR(RankDeficient);
WIGNER_DECLARE_ERROR(NotAProjection);
WIGNER_DECLARE_ERROR(RankMismatch);
WIGNER_DECLARE_ERROR(NotCompatible);
WIGNER_DECLARE_ERROR(InsufficientAmbientDim);
WIGNER_DECLARE_ERROR(NotAnIsometry);
WIGNER_DECLARE_ERROR(BadRank);
WIGNER_DECLARE_ERROR(NotOrthogonal);
WIGNER_DECLARE_ERROR(PreconditionViolated);
WIGNER_DECLARE_ERROR(NotAMember);
WIGNER_DECLARE_ERROR(ImageNotProjection);
WIGNER_DECLARE_ERROR(InconsistentStarImages);
WIGNER_DECLARE_ERROR(UnstableIntersection);
WIGNER_DECLARE_ERROR(NotSemilinear);
WIGNER_DECLARE_ERROR(SigmaAmbiguous);
WIGNER_DECLARE_ERROR(ParseError);

#undef WIGNER_DECLARE_ERROR

}  // namespace wigner

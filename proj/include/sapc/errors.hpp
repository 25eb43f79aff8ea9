// Error types thrown across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace sapc {

struct SapcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input document violates the triangulation schema; path is a JSON pointer.
struct SchemaError : SapcError {
    SchemaError(const std::string& pointer, const std::string& message)
        : SapcError("schema violation at " + pointer + ": " + message), path(pointer)
    {
    }
    std::string path;
};

struct NotClosedUnderFaces : SapcError {
    using SapcError::SapcError;
};

struct NonManifoldLink : SapcError {
    using SapcError::SapcError;
};

struct InconsistentOrientation : SapcError {
    using SapcError::SapcError;
};

struct UnknownSimplex : SapcError {
    using SapcError::SapcError;
};

struct NotSimplicial : SapcError {
    using SapcError::SapcError;
};

struct HypothesisViolated : SapcError {
    using SapcError::SapcError;
};

struct CoverViolation : SapcError {
    using SapcError::SapcError;
};

struct WindowTooNarrow : SapcError {
    using SapcError::SapcError;
};

struct PosetTooLarge : SapcError {
    using SapcError::SapcError;
};

struct UnboundedComplex : SapcError {
    using SapcError::SapcError;
};

struct NotACycle : SapcError {
    using SapcError::SapcError;
};

struct FormNotSymmetric : SapcError {
    using SapcError::SapcError;
};

struct NondegenerateCheckFailed : SapcError {
    using SapcError::SapcError;
};

}  // namespace sapc

#pragma once

#include <stdexcept>
#include <string>

namespace ccmkdv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A combinatorial size bound was exceeded (Pfaffian expansion order,
/// exponential-sum soliton count).
struct SizeLimitError : Error {
    using Error::Error;
};

/// Evaluation hit a pole of the defining formula (vanishing denominator).
struct PoleError : Error {
    using Error::Error;
};

/// Root bracketing failed: the residual has the same sign at both endpoints.
struct NoSignChangeError : Error {
    using Error::Error;
};

struct NonConvergenceError : Error {
    using Error::Error;
};

/// A numeric routine produced a non-finite value (overflow inside elimination).
struct NonFiniteError : Error {
    using Error::Error;
};

/// The result magnitude exceeds the double range even after exponent centering.
struct OverflowError : Error {
    using Error::Error;
};

/// |f| fell below the singularity threshold at the requested point.
struct NearSingularError : Error {
    using Error::Error;
};

struct InvalidConfigError : Error {
    using Error::Error;
};

/// The explicit time integrator left the stability region.
struct InstabilityError : Error {
    using Error::Error;
};

}  // namespace ccmkdv

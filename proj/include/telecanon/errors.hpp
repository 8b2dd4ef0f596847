#pragma once

#include <stdexcept>
#include <string>

namespace telecanon {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tensor product of states with a shared qubit label.
struct LabelCollision : Error {
    using Error::Error;
};

/// Operation on states whose qubit label lists disagree.
struct LabelMismatch : Error {
    using Error::Error;
};

/// A state that must be normalized is not, beyond tolerance.
struct NotNormalized : Error {
    using Error::Error;
};

/// Density matrix fails Hermiticity, trace or positivity checks.
struct InvalidDensityMatrix : Error {
    using Error::Error;
};

/// Completion input vector does not have squared norm 1/2.
struct NotHalfNormed : Error {
    using Error::Error;
};

/// Channel parameters violate the family constraints.
struct InvalidParams : Error {
    using Error::Error;
};

/// Measurement basis has the wrong element count or inconsistent labels.
struct MalformedBasis : Error {
    using Error::Error;
};

/// Operation requires a perfect-channel verdict and did not get one.
struct NotPerfect : Error {
    using Error::Error;
};

/// A zero-probability measurement outcome was sampled.
struct SampledZeroOutcome : Error {
    using Error::Error;
};

/// Batch run requested with no sessions.
struct EmptyBatch : Error {
    using Error::Error;
};

}  // namespace telecanon

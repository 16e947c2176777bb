#pragma once

#include <stdexcept>
#include <string>

namespace hnl {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both amplitudes (or a vector) are numerically zero.
struct ZeroVector : Error { using Error::Error; };

// A Bloch vector expected on the unit sphere lies elsewhere.
struct NotPure : Error { using Error::Error; };

// Mixture probabilities are negative or do not sum to one.
struct BadDistribution : Error { using Error::Error; };

// A scalar parameter lies outside its admissible interval.
struct OutOfDomain : Error { using Error::Error; };

// A density operator fails hermiticity, unit trace, or positivity.
struct InvalidState : Error { using Error::Error; };

// A detector (axis, effect, or behavioral table) violates its constraints.
struct InvalidDetector : Error { using Error::Error; };

// A state label outside {alpha, beta, delta, minus_delta}.
struct UnknownLabel : Error { using Error::Error; };

// A linear system whose matrix is numerically singular.
struct SingularSystem : Error { using Error::Error; };

// Too few rounds for a statistically meaningful verdict.
struct InsufficientData : Error { using Error::Error; };

// An output path could not be opened or written.
struct IoFailure : Error { using Error::Error; };

} // namespace hnl

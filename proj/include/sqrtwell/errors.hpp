#ifndef SQRTWELL_ERRORS_HPP
#define SQRTWELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sqrtwell {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Pole of a special function hit directly (e.g. 1F1 with b a non-positive integer).
struct PoleError : Error {
    using Error::Error;
};

// Internal error estimate exceeds the requested tolerance.
struct AccuracyError : Error {
    using Error::Error;
};

// A formula degenerates (division by a vanishing parameter).
struct DegenerateError : Error {
    using Error::Error;
};

// Root bracketing failed after the expansion strategy was exhausted.
struct BracketError : Error {
    using Error::Error;
};

// Fixed-point iteration left its safeguard region.
struct DivergenceError : Error {
    using Error::Error;
};

// A root solve failed for a specific spectral branch.
struct RootError : Error {
    using Error::Error;
};

// ODE integration lost stability near the singular endpoint.
struct StiffnessError : Error {
    using Error::Error;
};

// Fewer bound states found than requested.
struct IncompleteSpectrumError : Error {
    using Error::Error;
};

// Wavefunction form self-check could not single out one variant.
struct AmbiguityError : Error {
    using Error::Error;
};

// A wavefunction form outside the enumerated family was supplied.
struct FormError : Error {
    using Error::Error;
};

// Least-squares design matrix is rank deficient.
struct SingularFitError : Error {
    using Error::Error;
};

} // namespace sqrtwell

#endif

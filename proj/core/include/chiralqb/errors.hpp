#ifndef CHIRALQB_ERRORS_HPP
#define CHIRALQB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chiralqb {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- parameter validation ---
struct NegativeRate : Error {
    using Error::Error;
};
struct NegativeTemperature : Error {
    using Error::Error;
};
struct NonPositiveAlpha : Error {
    using Error::Error;
};
struct ChiralityOutOfRange : Error {
    using Error::Error;
};
struct DegenerateCoupling : Error {
    using Error::Error;
};

// --- time integration ---
struct StepSizeUnderflow : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};

// --- closed-form solutions ---
// Raised when a dark-mode degeneracy removes the unique steady state.
struct SteadyStateUndefined : Error {
    using Error::Error;
};

// --- Gaussian-state metrics ---
struct UnphysicalState : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};

// --- Fock-space oracle ---
struct CutoffTooLarge : Error {
    using Error::Error;
};
struct TailMassExceeded : Error {
    using Error::Error;
};

// --- configuration / I/O ---
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace chiralqb

#endif

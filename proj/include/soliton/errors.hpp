#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input fails a precondition (bad sizes, out-of-range parameters, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Pulse does not satisfy the boundary-decay assumption of the scattering problem.
class NonDecayingPulse : public Error {
public:
    using Error::Error;
};

/// An eigenvalue sits at (or beyond) the search boundary sigma_max.
class SearchRangeTooSmall : public Error {
public:
    using Error::Error;
};

/// Newton refinement did not converge within the iteration cap.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// spectral_amplitude called at a lambda that is not a root of a().
class NotAnEigenvalue : public Error {
public:
    using Error::Error;
};

/// a'(lambda_k) vanishes; the root is (numerically) degenerate.
class DegenerateRoot : public Error {
public:
    using Error::Error;
};

/// Two eigenvalues coincide; the Darboux recursion denominator degenerates.
class DuplicateEigenvalue : public Error {
public:
    using Error::Error;
};

/// A Darboux projection coefficient exceeded the overflow threshold.
/// Re-synthesize on a shifted or narrower grid.
class OverflowGuard : public Error {
public:
    using Error::Error;
};

/// The grid captures less energy than the requested fraction; widen the grid.
class InsufficientEnergy : public Error {
public:
    using Error::Error;
};

/// Spectral density at the Nyquist edge is not negligible; decrease dt.
class AliasingDetected : public Error {
public:
    using Error::Error;
};

/// Split-step propagation changed the grid energy beyond tolerance.
class EnergyDrift : public Error {
public:
    using Error::Error;
};

/// Closed-form estimate evaluated outside its validity region.
class ValidityViolated : public Error {
public:
    using Error::Error;
};

/// Eigenvalues too close for the symmetric-amplitude product formula.
class DegenerateEigenvalues : public Error {
public:
    using Error::Error;
};

}  // namespace soliton

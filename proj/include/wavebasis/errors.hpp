#pragma once

#include <stdexcept>
#include <string>

namespace wavebasis {

/// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside the domain of a profile.
struct DomainError : Error {
  using Error::Error;
};

/// Evaluation exactly at the singular point of a singular potential.
struct SingularPointError : Error {
  using Error::Error;
};

/// An operation was called with arguments violating its stated preconditions.
struct PreconditionError : Error {
  using Error::Error;
};

/// k^2 has no sign change where a turning point was requested.
struct NoTurningPointError : Error {
  using Error::Error;
};

/// A phase integral ran through a classically forbidden region (k^2 < 0).
struct ForbiddenRegionError : Error {
  using Error::Error;
};

/// Adaptive quadrature failed to converge to the requested tolerance.
struct IntegrationError : Error {
  using Error::Error;
};

/// Root bracketing exhausted its expansion budget without a sign change.
struct NoRootError : Error {
  using Error::Error;
};

/// The shooting domain is too small for the wavefunction to decay at the ends.
struct TruncationError : Error {
  using Error::Error;
};

/// A fixed-step integration was too coarse for the requested accuracy.
struct AccuracyError : Error {
  using Error::Error;
};

/// Bad CLI arguments or malformed input documents.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace wavebasis

#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parameter violates its documented invariant (negative power, empty grid...).
struct InvalidParameterError : Error {
  using Error::Error;
};

/// An input is outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

/// A quantity (e.g. FWHM) cannot be extracted from the given data.
struct NotMeasurableError : Error {
  using Error::Error;
};

/// A state with zero norm / zero counts where a nonzero one is required.
struct DegenerateStateError : Error {
  using Error::Error;
};

/// A matrix fails the density-matrix invariants beyond tolerance.
struct InvalidStateError : Error {
  using Error::Error;
};

/// A linear system / mapping that must be invertible is not.
struct NonInvertibleError : Error {
  using Error::Error;
};

/// Config file parse or validation failure. CLI exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

/// Filesystem failure, reported with path context. CLI exit code 4.
struct IoError : Error {
  using Error::Error;
};

}  // namespace biphoton

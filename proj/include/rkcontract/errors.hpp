#pragma once

#include <stdexcept>
#include <string>

namespace rkcontract {

/// Base class for all rkcontract errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Weight vector does not sum to one (beyond tolerance).
struct ConsistencyError : Error {
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (h <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Dimension or shape mismatch, or a non-symmetric matrix where a
/// symmetric one is required.
struct ShapeError : Error {
  using Error::Error;
};

/// Operation not available for this input (e.g. implicit tableau passed
/// to the explicit-only integrator).
struct UnsupportedError : Error {
  using Error::Error;
};

/// A theorem hypothesis required by the operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// Smoothness calibration of the mollified potential did not converge.
struct CalibrationError : Error {
  using Error::Error;
};

/// The constructed potential failed to produce an expanding step.
struct WitnessError : Error {
  using Error::Error;
};

/// Internal geometric construction failed (unreachable for valid data).
struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace rkcontract

#pragma once

#include <stdexcept>

namespace pivsusy {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter poles of the special functions (gamma at non-positive integers,
// Kummer b at non-positive integers).
struct PoleError : Error {
  using Error::Error;
};

// Argument outside the validated evaluation range.
struct RangeError : Error {
  using Error::Error;
};

// Vanishing Wronskian: the transformation is singular at this point.
struct SingularPointError : Error {
  using Error::Error;
};

// Extremal state vanishes on the requested grid; log-derivative undefined.
struct SingularExtremalStateError : SingularPointError {
  using SingularPointError::SingularPointError;
};

// Mapped level coincides with a factorization energy.
struct DegenerateLevelError : Error {
  using Error::Error;
};

// |g| below the degenerate floor on the whole grid; b/g is meaningless.
struct DegenerateGError : Error {
  using Error::Error;
};

struct OrderMismatchError : Error {
  using Error::Error;
};

struct PositionMismatchError : Error {
  using Error::Error;
};

struct InsufficientOrderError : Error {
  using Error::Error;
};

struct ZeroDenominatorError : Error {
  using Error::Error;
};

// Factorization energy is not an oscillator level.
struct NotDegenerateError : Error {
  using Error::Error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

}  // namespace pivsusy

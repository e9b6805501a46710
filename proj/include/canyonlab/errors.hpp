#pragma once

#include <stdexcept>
#include <string>

namespace canyonlab {

// Base class for all computation failures reported by the library.
// The CLI maps these to exit code 2.
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByUncertainZero : ComputeError {
  using ComputeError::ComputeError;
};

struct PrecisionExhausted : ComputeError {
  using ComputeError::ComputeError;
};

struct TruncationAmbiguous : ComputeError {
  using ComputeError::ComputeError;
};

struct TruncationTooSmall : ComputeError {
  using ComputeError::ComputeError;
};

struct BarMismatch : ComputeError {
  using ComputeError::ComputeError;
};

struct InconsistentCanyon : ComputeError {
  using ComputeError::ComputeError;
};

struct CombinatorialBlowup : ComputeError {
  using ComputeError::ComputeError;
};

// Raised by develop_phi2 when the residual cannot be matched by any
// admissible correction term. This is a refutation signal, not a bug.
struct InconsistentDevelopment : ComputeError {
  using ComputeError::ComputeError;
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

struct UnboundParameter : ParseError {
  using ParseError::ParseError;
};

}  // namespace canyonlab

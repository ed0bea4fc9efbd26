#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wamfek {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed domain, bad degree, unknown basis name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation could not be completed in floating point or within limits.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised when a Vandermonde-type matrix loses numerical rank.  `step` is the
/// greedy pivot step or refinement round at which it was detected.
class RankDeficientError : public NumericalError {
 public:
  RankDeficientError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Raised by the admissible-mesh builder when the projected size exceeds the cap.
class MeshTooLargeError : public NumericalError {
 public:
  MeshTooLargeError(const std::string& what, double projected)
      : NumericalError(what), projected_(projected) {}

  double projected() const noexcept { return projected_; }

 private:
  double projected_;
};

}  // namespace wamfek

#pragma once

#include <stdexcept>
#include <string>

namespace ferronem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map (|r| >= 1 for phi, non-unit vectors, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a singular point of an analytic map.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Malformed mesh file or invalid triangulation. `line()` is 0 when the
/// error is not tied to a file position.
class MeshError : public Error {
 public:
  explicit MeshError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class LinearSolverError : public Error {
 public:
  LinearSolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An iterative method ran out of iterations.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, int iterations, double last_residual)
      : Error(what), iterations_(iterations), last_residual_(last_residual) {}

  int iterations() const noexcept { return iterations_; }
  double last_residual() const noexcept { return last_residual_; }

 private:
  int iterations_;
  double last_residual_;
};

}  // namespace ferronem

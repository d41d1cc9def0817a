#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bhtlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix that must have full column (or row) rank does not.
class RankError : public Error {
 public:
  RankError(const std::string& what, std::size_t rank, std::size_t required)
      : Error(what + " (numerical rank " + std::to_string(rank) + ", need " +
              std::to_string(required) + ")"),
        rank_(rank),
        required_(required) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t rank_;
  std::size_t required_;
};

class NodeError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Thrown by the integrators when a step produces a non-finite state.
class BlowUpError : public Error {
 public:
  explicit BlowUpError(double last_finite_t)
      : Error("non-finite state after t = " + std::to_string(last_finite_t)),
        last_finite_t_(last_finite_t) {}

  double last_finite_t() const noexcept { return last_finite_t_; }

 private:
  double last_finite_t_;
};

}  // namespace bhtlab

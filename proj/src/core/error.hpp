#pragma once

#include <stdexcept>
#include <string>

namespace blob {

enum class ErrorCode {
  invalid_argument,
  domain,
  invalid_curve,
  quadrature,
  convergence,
  io,
  parse,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by curve validation; `invariant` names the violated constraint.
class InvalidCurve : public Error {
 public:
  InvalidCurve(std::string invariant, const std::string& detail)
      : Error(ErrorCode::invalid_curve, invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Quadrature that could not reach its tolerance still reports what it got.
class QuadratureError : public Error {
 public:
  QuadratureError(double best, double achieved, const std::string& what)
      : Error(ErrorCode::quadrature, what), best_(best), achieved_(achieved) {}
  double best_estimate() const noexcept { return best_; }
  double achieved_error() const noexcept { return achieved_; }

 private:
  double best_;
  double achieved_;
};

}  // namespace blob

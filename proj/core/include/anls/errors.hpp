#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace anls {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: non-finite field, bad grid, parameter outside its range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rescaled field no longer fits inside the computational box.
class SupportOverflowError : public Error {
 public:
  using Error::Error;
};

/// A ratio normalised by a vanishing quantity (e.g. the zero field).
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// Too few samples or records for the requested estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration lost its normalisation (stabilising factor -> 0 or inf).
class SolverDivergedError : public Error {
 public:
  SolverDivergedError(const std::string& what, std::vector<double> factor_trace,
                      std::vector<double> residual_trace)
      : Error(what),
        factor_trace_(std::move(factor_trace)),
        residual_trace_(std::move(residual_trace)) {}

  const std::vector<double>& factor_trace() const noexcept { return factor_trace_; }
  const std::vector<double>& residual_trace() const noexcept { return residual_trace_; }

 private:
  std::vector<double> factor_trace_;
  std::vector<double> residual_trace_;
};

/// Quadrature could not reach the requested absolute tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace anls

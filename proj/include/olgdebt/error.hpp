#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace olgdebt {

enum class ErrorKind {
  InvalidCalibration,
  NonpositiveDenominator,
  IndeterminateSystem,
  DimensionMismatch,
  NoConvergence,
  RegimeCycleDetected,
  BracketFailure,
  ParseError,
  EmptyPanel,
  DegenerateDesign,
  NoRoot,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error. `what()` is prefixed with the error name so the CLI can print
/// it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& context)
      : std::runtime_error(std::string(to_string(kind)) + ": " + context),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Newton failure; carries the best residual reached.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int iterations, double residual, const std::string& context);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace olgdebt

#include "olgdebt/error.hpp"

#include <sstream>

namespace olgdebt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidCalibration: return "InvalidCalibration";
    case ErrorKind::NonpositiveDenominator: return "NonpositiveDenominator";
    case ErrorKind::IndeterminateSystem: return "IndeterminateSystem";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::RegimeCycleDetected: return "RegimeCycleDetected";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyPanel: return "EmptyPanel";
    case ErrorKind::DegenerateDesign: return "DegenerateDesign";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::string describe(int iterations, double residual, const std::string& context) {
  std::ostringstream os;
  os << context << " (iterations=" << iterations << ", max|residual|=" << residual << ")";
  return os.str();
}
}  // namespace

NoConvergenceError::NoConvergenceError(int iterations, double residual,
                                       const std::string& context)
    : Error(ErrorKind::NoConvergence, describe(iterations, residual, context)),
      iterations_(iterations),
      residual_(residual) {}

}  // namespace olgdebt

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "olgdebt/error.hpp"

namespace olgdebt {

enum class PreferenceKind { LogLog, GHH };

std::string_view to_string(PreferenceKind kind) noexcept;
/// Accepts "loglog" or "ghh" (case-insensitive).
PreferenceKind parse_preference(std::string_view text);

/// Structural parameters, quarterly frequency.
///
/// `eta` left unset means the labor-disutility weight is pinned so that
/// steady-state hours equal `target_hours`.
struct Calibration {
  double beta = 0.998;
  double q = 0.9512;
  double theta = 6.0;
  double epsilon = 2.0;
  double alpha = 0.75;
  double sigma = 1.0;
  double phi_pi = 2.0;
  double phi_y = 0.125;
  double debt_to_gdp = 2.4;  // B/Y, quarterly output
  std::optional<double> eta;
  double target_hours = 0.3;
  PreferenceKind pref = PreferenceKind::LogLog;

  /// Table values used throughout the project; q differs by preference kind.
  static Calibration baseline(PreferenceKind pref);

  /// Throws Error(InvalidCalibration) on any violated parameter bound.
  void validate() const;

  double eta_value() const;
  Calibration with_pinned_eta() const;
};

struct SteadyState {
  double r_bar = 0;        // quarterly net real rate
  double Y = 0;
  double L = 0;
  double C = 0;
  double w = 0;
  double T = 0;            // lump-sum taxes
  double B_prime = 0;      // real debt inclusive of interest
  double V = 0;            // aggregate financial wealth
  double delta = 0;
  double G = 0;
  double pi = 0;           // net inflation
  double i = 0;            // net nominal rate
  double debt_to_gdp = 0;  // B/Y, quarterly
};

/// Net quarterly rate to annual percentage-rate convention (4 * r).
inline double annualize(double quarterly_net_rate) { return 4.0 * quarterly_net_rate; }
inline double deannualize(double annual_net_rate) { return annual_net_rate / 4.0; }

/// Gross steady-state real rate as a closed form in the structural
/// parameters. `debt_to_gdp` is B/Y at quarterly frequency. Returns the
/// denominator through `denominator` so callers can reject infeasible debt.
template <typename Scalar>
Scalar gross_rate_closed_form(PreferenceKind pref, const Scalar& beta, const Scalar& q,
                              const Scalar& debt_to_gdp, double eta, double theta,
                              double epsilon, double sigma, Scalar* denominator = nullptr) {
  if (pref == PreferenceKind::LogLog) {
    const Scalar numer = q * (1.0 + eta);
    const Scalar denom = beta * numer - (1.0 - q) * (1.0 - beta * q) * debt_to_gdp;
    if (denominator) *denominator = denom;
    return numer / denom;
  }
  // The GHH form is written over beta; multiplying through gives the same
  // shape as the log-log one.
  const double markup_term = epsilon * theta - sigma * (theta - 1.0);
  const Scalar numer = q * markup_term;
  const Scalar denom =
      beta * numer - epsilon * theta * (1.0 - q) * (1.0 - beta * q) * debt_to_gdp;
  if (denominator) *denominator = denom;
  return numer / denom;
}

/// Labor-disutility weight that makes `target_hours` the zero-inflation
/// steady state.
double pin_eta(const Calibration& calib);

/// Quarterly net steady-state real rate. Throws NonpositiveDenominator when
/// the debt level cannot be held at any finite rate.
double steady_state_rate(const Calibration& calib);

SteadyState solve_steady_state(const Calibration& calib);

/// Residuals of the steady-state identities, in order: market clearing,
/// production, government budget, delta recursion, aggregate Euler, labor
/// supply, wealth = debt.
Eigen::Matrix<double, 7, 1> steady_state_residuals(const Calibration& calib,
                                                   const SteadyState& ss);

}  // namespace olgdebt

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olgdebt/model_core.hpp"

namespace olgdebt {

enum class Instrument { Debt, Spending };
enum class Regime { Normal, ZLB };

std::string_view to_string(Instrument x) noexcept;
std::string_view to_string(Regime x) noexcept;
Instrument parse_instrument(std::string_view text);
Regime parse_regime(std::string_view text);

struct LinearCoefficients {
  double kappa = 0;      // NKPC slope, log-log
  double kappa_ghh = 0;  // NKPC slope, GHH
  double zeta = 0;
  double r_bar = 0;
  double one_minus_L = 0;
  double beta_1r = 0;    // beta * (1 + r_bar)
};

LinearCoefficients linear_coefficients(const Calibration& calib);

struct ShortRunState {
  double mu = 0;
  double r_e_S = 0;       // log units
  double g_S = 0;         // share of steady-state output
  double b_prime_S = 0;   // log-deviation of B'
  bool zlb = false;
};

struct TwoStateSolution {
  double y_S = 0;
  double pi_S = 0;
  double i_S = 0;         // log(1+i), a level
  double delta_hat_S = 0;
  double shadow_rate = 0; // r^e + phi_pi*pi + phi_y*y
  bool regime_consistent = false;
};

/// Short-run fixed point of the linear system under E x' = mu x.
/// Throws IndeterminateSystem when the regime's determinacy margin is not
/// positive.
TwoStateSolution solve_two_state(const Calibration& calib, const ShortRunState& state);

/// Inputs of the eight closed forms, templated so they can be differentiated.
template <typename Scalar>
struct MultiplierInputs {
  Scalar beta_1r;    // beta * (1 + r_bar)
  Scalar gross_r;    // 1 + r_bar
  Scalar kappa;      // preference-specific NKPC slope
  Scalar kappa_log;  // log-log slope, used by the spending cost-push term
  Scalar one_minus_L;
  Scalar sigma;
  Scalar zeta;
  Scalar theta;
  Scalar phi_pi;
  Scalar phi_y;
  Scalar mu;
};

template <typename Scalar>
Scalar multiplier_denominator(PreferenceKind pref, Regime regime,
                              const MultiplierInputs<Scalar>& m) {
  const Scalar disc = 1.0 - m.mu / m.gross_r;
  const Scalar curv = pref == PreferenceKind::LogLog ? Scalar(1.0) : Scalar(m.zeta / m.theta);
  if (regime == Regime::Normal)
    return (curv * (m.beta_1r - m.mu) + m.beta_1r * m.phi_y) * disc +
           m.beta_1r * m.kappa * (m.phi_pi - m.mu);
  return curv * (m.beta_1r - m.mu) * disc - m.beta_1r * m.kappa * m.mu;
}

template <typename Scalar>
Scalar closed_form_multiplier(PreferenceKind pref, Instrument instrument, Regime regime,
                              const MultiplierInputs<Scalar>& m) {
  const Scalar disc = 1.0 - m.mu / m.gross_r;
  const Scalar den = multiplier_denominator(pref, regime, m);
  if (instrument == Instrument::Debt) return (m.beta_1r - 1.0) * disc / den;
  if (pref == PreferenceKind::GHH) return (m.beta_1r - m.mu) * disc * m.zeta / den;
  const Scalar push = m.beta_1r * m.kappa_log * m.one_minus_L * m.sigma;
  if (regime == Regime::Normal)
    return ((m.beta_1r - m.mu) * disc + push * (m.phi_pi - m.mu)) / den;
  return ((m.beta_1r - m.mu) * disc - push * m.mu) / den;
}

MultiplierInputs<double> multiplier_inputs(const Calibration& calib, double mu);

/// Closed-form impact multiplier; dy/db' for Debt, dy/dg for Spending.
double analytic_multiplier(const Calibration& calib, double mu, Instrument instrument,
                           Regime regime);

struct Determinacy {
  bool determinate = false;
  double margin = 0;  // value of the regime's quadratic in mu
};

Determinacy check_determinacy(const Calibration& calib, double mu, Regime regime);

/// Largest mu in [0,1) with a positive margin, found by bisection to 1e-4.
/// Returns 1.0 when the whole interval is determinate and 0.0 when mu = 0
/// already fails.
double determinacy_threshold(const Calibration& calib, Regime regime);

enum class SweepAxis { Q, DebtToGdp, Mu };

std::string_view to_string(SweepAxis x) noexcept;
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepRow {
  double value = 0;
  double multiplier = 0;  // NaN when the row failed
  bool determinate = false;
  double r_bar_annualized = 0;  // NaN when the steady state is infeasible
  std::string error;            // empty on success
};

struct SweepOptions {
  std::optional<double> mu;     // required for the Q and DebtToGdp axes
  bool repin_eta = true;
  int jobs = 1;
};

/// One row per grid value, sorted by value. Rows with an infeasible steady
/// state or an indeterminate system are kept and flagged.
std::vector<SweepRow> sweep_multiplier(const Calibration& calib, SweepAxis axis,
                                       std::vector<double> grid, Instrument instrument,
                                       Regime regime, const SweepOptions& options);

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace olgdebt

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "olgdebt/model_core.hpp"

namespace olgdebt {

/// Preference-shifter levels xi_t for t = 1..xi.size(); later periods are 1.
struct ShockSpec {
  std::vector<double> xi;
  int recession_length = 8;

  /// xi_{t+1} / xi_t for period t (1-based).
  double growth(int t) const;
  double level(int t) const;

  /// Constant xi_{t+1}/xi_t = g over periods 1..length, 1 afterwards.
  static ShockSpec constant_growth(double g, int length = 8);
  static ShockSpec none(int length = 8) { return constant_growth(1.0, length); }
};

enum class PlanKind { None, Temporary, Permanent };

std::string_view to_string(PlanKind kind) noexcept;
PlanKind parse_plan(std::string_view text);

struct FiscalPlan {
  PlanKind kind = PlanKind::None;
  double debt_step = 0.02;  // change in annual debt-to-output ratio at t=1
  int revert_period = 9;    // Temporary: first period back at the initial level
  std::vector<double> g_path;  // government spending levels, zero when absent

  static FiscalPlan temporary(double step = 0.02) { return {PlanKind::Temporary, step, 9, {}}; }
  static FiscalPlan permanent(double step = 0.02) { return {PlanKind::Permanent, step, 9, {}}; }
};

struct SimulationOptions {
  int horizon = 200;
  bool track_natural_rate = true;
  double tolerance = 1e-9;
  int max_newton_iterations = 50;
  int max_halvings = 10;
  int max_regime_iterations = 50;
};

/// Boundary values the path must reach at t = T+1.
struct TerminalState {
  double Y = 0, L = 0, w = 0, pi = 1, i = 0, r = 0, delta = 0, p_star = 1, s = 1, x1 = 0, x2 = 0;
  double B_prime = 0;
};

struct SimulationPath {
  Eigen::VectorXd Y, C, L, w, pi, i, r, B_prime, taxes, V, delta, xi, p_star, s, x1, x2;
  Eigen::VectorXd shadow_rate;  // net rate implied by the unconstrained rule
  std::vector<bool> zlb;
  double max_residual = 0;
  int newton_iterations = 0;
  int regime_iterations = 0;

  int horizon() const { return static_cast<int>(Y.size()); }
  int zlb_periods() const;
};

/// Equations per period in `residuals`: 11 model equations plus market
/// clearing, government budget and wealth = debt.
inline constexpr int kResidualsPerPeriod = 14;

/// Initial zero-inflation steady state with the nonlinear rule's policy rate.
TerminalState initial_state(const Calibration& calib);

/// Steady state reached after the plan. Under a permanent debt change the
/// policy intercept stays at the initial rate, so the new state carries a
/// small trend inflation.
TerminalState terminal_state(const Calibration& calib, const FiscalPlan& plan);

/// Per-period debt levels B'_t implied by the plan, t = 1..T.
Eigen::VectorXd debt_path(const Calibration& calib, const FiscalPlan& plan, int horizon);

/// Stacked residuals, period-major, kResidualsPerPeriod per period.
Eigen::VectorXd residuals(const SimulationPath& path, const Calibration& calib,
                          const ShockSpec& shocks, const FiscalPlan& plan,
                          const TerminalState& terminal, bool track_natural_rate = true);

/// Constant path sitting at the initial steady state.
SimulationPath steady_state_path(const Calibration& calib, int horizon);

SimulationPath solve_path(const Calibration& calib, const ShockSpec& shocks,
                          const FiscalPlan& plan, const SimulationOptions& options = {},
                          const SimulationPath* warm_start = nullptr);

/// Household budget minus its sources, max over periods.
double walras_residual(const SimulationPath& path, const Calibration& calib);

/// Shock whose no-plan simulation lowers impact output by `target_drop`
/// (a positive fraction).
ShockSpec calibrate_shock(const Calibration& calib, double target_drop, int recession_length = 8,
                          const SimulationOptions& options = {});

/// Normal-times counterpart: half the log size of the given shock.
ShockSpec mild_shock(const ShockSpec& zlb_shock);

struct MultiplierReport {
  double impact = 0;
  double present_value = 0;
  int k = 8;
  std::string regime_label;  // Normal, ZLB or Mixed
  int baseline_zlb_periods = 0;
  int treatment_zlb_periods = 0;
  double output_gain = 0;    // dY_1 / Y_bar
  double debt_change = 0;    // dB'_1 / Y_bar
  double max_residual = 0;
};

/// PV(k) of the differenced paths, discounted along the treatment path.
double present_value_multiplier(const SimulationPath& baseline, const SimulationPath& treatment,
                                int k);

MultiplierReport debt_multiplier_experiment(const Calibration& calib, const ShockSpec& shocks,
                                            const FiscalPlan& plan,
                                            const SimulationOptions& options = {});

struct DebtLevelResult {
  double debt_to_gdp_annual = 0;
  double r_bar_annualized = 0;
  MultiplierReport report;
  SimulationPath baseline;
  SimulationPath treatment;
};

/// Shock calibrated once at the first grid entry (annual ratios) and held
/// fixed across levels.
std::vector<DebtLevelResult> debt_level_experiment(const Calibration& calib,
                                                   const std::vector<double>& debt_grid_annual,
                                                   double target_drop, const FiscalPlan& plan,
                                                   const SimulationOptions& options = {},
                                                   int jobs = 1);

void write_path_csv(std::ostream& out, const SimulationPath& path);
nlohmann::ordered_json to_json(const MultiplierReport& report);

}  // namespace olgdebt

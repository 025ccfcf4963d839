#pragma once

#include <optional>
#include <vector>

#include "olgdebt/perfect_foresight.hpp"

namespace olgdebt {

enum class Scenario { Normal, ZLB };

std::string_view to_string(Scenario s) noexcept;
Scenario parse_scenario(std::string_view text);

/// ZLB shock: impact output falls by `zlb_target_drop` with no plan. The
/// normal-times shock is its square root (half the log size).
struct ScenarioShocks {
  ShockSpec zlb;
  ShockSpec normal;
};

ScenarioShocks scenario_shocks(const Calibration& calib, double zlb_target_drop = 0.04,
                               const SimulationOptions& options = {});

struct MultiplierTableRow {
  PreferenceKind pref = PreferenceKind::LogLog;
  double q = 0;
  double shock_growth = 1;  // xi_{t+1}/xi_t of the ZLB shock
  MultiplierReport normal_temporary, zlb_temporary, normal_permanent, zlb_permanent;

  const MultiplierReport& cell(Scenario s, PlanKind plan) const;
};

/// q values of one panel: the baseline q first, then 0.95 .. 0.99.
std::vector<double> panel_q_values(PreferenceKind pref);

MultiplierTableRow run_multiplier_row(const Calibration& calib,
                                      const SimulationOptions& options = {});

/// Full panel, rows in panel_q_values order; rows run concurrently.
std::vector<MultiplierTableRow> run_multiplier_panel(PreferenceKind pref, int jobs = 1,
                                                     const SimulationOptions& options = {});

struct ReferenceCell {
  PreferenceKind pref;
  double q;
  Scenario scenario;
  PlanKind plan;
  double impact;
  double present_value;
};

/// Reference simulated multipliers, 4-decimal rounding.
const std::vector<ReferenceCell>& reference_multipliers();

std::optional<ReferenceCell> find_reference(PreferenceKind pref, double q, Scenario scenario,
                                            PlanKind plan);

}  // namespace olgdebt

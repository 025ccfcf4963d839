#include "olgdebt/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <thread>

namespace olgdebt {

std::string_view to_string(Scenario s) noexcept { return s == Scenario::Normal ? "normal" : "zlb"; }

Scenario parse_scenario(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "normal") return Scenario::Normal;
  if (s == "zlb") return Scenario::ZLB;
  throw Error(ErrorKind::InvalidConfig,
              "unknown scenario '" + std::string(text) + "' (expected normal or zlb)");
}

ScenarioShocks scenario_shocks(const Calibration& calib, double zlb_target_drop,
                               const SimulationOptions& options) {
  ScenarioShocks s;
  s.zlb = calibrate_shock(calib, zlb_target_drop, 8, options);
  s.normal = mild_shock(s.zlb);
  return s;
}

const MultiplierReport& MultiplierTableRow::cell(Scenario s, PlanKind plan) const {
  if (plan == PlanKind::Permanent) return s == Scenario::Normal ? normal_permanent : zlb_permanent;
  return s == Scenario::Normal ? normal_temporary : zlb_temporary;
}

std::vector<double> panel_q_values(PreferenceKind pref) {
  const double base = Calibration::baseline(pref).q;
  return {base, 0.95, 0.96, 0.97, 0.98, 0.99};
}

MultiplierTableRow run_multiplier_row(const Calibration& calib, const SimulationOptions& options) {
  MultiplierTableRow row;
  row.pref = calib.pref;
  row.q = calib.q;
  const ScenarioShocks shocks = scenario_shocks(calib, 0.04, options);
  row.shock_growth = shocks.zlb.growth(1);
  const auto temp = FiscalPlan::temporary();
  const auto perm = FiscalPlan::permanent();
  row.normal_temporary = debt_multiplier_experiment(calib, shocks.normal, temp, options);
  row.zlb_temporary = debt_multiplier_experiment(calib, shocks.zlb, temp, options);
  row.normal_permanent = debt_multiplier_experiment(calib, shocks.normal, perm, options);
  row.zlb_permanent = debt_multiplier_experiment(calib, shocks.zlb, perm, options);
  return row;
}

std::vector<MultiplierTableRow> run_multiplier_panel(PreferenceKind pref, int jobs,
                                                     const SimulationOptions& options) {
  const auto qs = panel_q_values(pref);
  std::vector<MultiplierTableRow> rows(qs.size());
  std::vector<std::exception_ptr> errors(qs.size());
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), qs.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < n; ++j)
    pool.emplace_back([&, j] {
      for (std::size_t k = j; k < qs.size(); k += n) {
        try {
          Calibration c = Calibration::baseline(pref);
          c.q = qs[k];
          rows[k] = run_multiplier_row(c, options);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

const std::vector<ReferenceCell>& reference_multipliers() {
  using P = PreferenceKind;
  using S = Scenario;
  using K = PlanKind;
  // {q, normal temp, zlb temp, normal perm, zlb perm} for impact and PV.
  struct Row {
    double q, it[4], pv[4];
  };
  static const std::vector<ReferenceCell> cells = [] {
    const Row loglog[] = {
        {0.9512, {0.0006, 0.0189, 0.0000, 0.0387}, {0.0010, 0.0073, 0.0000, 0.0131}},
        {0.95, {0.0006, 0.0199, 0.0000, 0.0407}, {0.0011, 0.0076, 0.0000, 0.0138}},
        {0.96, {0.0004, 0.0128, 0.0000, 0.0261}, {0.0007, 0.0049, 0.0000, 0.0088}},
        {0.97, {0.0002, 0.0072, 0.0000, 0.0148}, {0.0004, 0.0028, 0.0000, 0.0050}},
        {0.98, {0.0001, 0.0033, 0.0000, 0.0067}, {0.0002, 0.0013, 0.0000, 0.0023}},
        {0.99, {0.0000, 0.0009, 0.0000, 0.0018}, {0.0000, 0.0003, 0.0000, 0.0006}},
    };
    const Row ghh[] = {
        {0.9785, {0.0004, 0.0707, 0.0000, 0.1387}, {0.0013, 0.0230, 0.0000, 0.0401}},
        {0.95, {0.0022, 0.3766, 0.0006, 0.7439}, {0.0068, 0.1257, 0.0006, 0.2216}},
        {0.96, {0.0013, 0.2380, 0.0003, 0.4686}, {0.0044, 0.0785, 0.0003, 0.1378}},
        {0.97, {0.0007, 0.1359, 0.0001, 0.2672}, {0.0025, 0.0444, 0.0001, 0.0777}},
        {0.98, {0.0003, 0.0614, 0.0000, 0.1205}, {0.0011, 0.0200, 0.0000, 0.0348}},
        {0.99, {0.0001, 0.0167, 0.0000, 0.0328}, {0.0003, 0.0054, 0.0000, 0.0094}},
    };
    const S scen[4] = {S::Normal, S::ZLB, S::Normal, S::ZLB};
    const K plan[4] = {K::Temporary, K::Temporary, K::Permanent, K::Permanent};
    std::vector<ReferenceCell> out;
    auto add = [&](P pref, const Row& r) {
      for (int c = 0; c < 4; ++c) out.push_back({pref, r.q, scen[c], plan[c], r.it[c], r.pv[c]});
    };
    for (const auto& r : loglog) add(P::LogLog, r);
    for (const auto& r : ghh) add(P::GHH, r);
    return out;
  }();
  return cells;
}

std::optional<ReferenceCell> find_reference(PreferenceKind pref, double q, Scenario scenario,
                                            PlanKind plan) {
  for (const auto& c : reference_multipliers())
    if (c.pref == pref && std::abs(c.q - q) < 1e-9 && c.scenario == scenario && c.plan == plan)
      return c;
  return std::nullopt;
}

}  // namespace olgdebt

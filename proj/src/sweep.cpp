#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "olgdebt/format.hpp"
#include "olgdebt/linear_analytics.hpp"

namespace olgdebt {

std::string_view to_string(SweepAxis x) noexcept {
  switch (x) {
    case SweepAxis::Q: return "q";
    case SweepAxis::DebtToGdp: return "debt_to_gdp";
    case SweepAxis::Mu: return "mu";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "q") return SweepAxis::Q;
  if (text == "debt_to_gdp" || text == "by") return SweepAxis::DebtToGdp;
  if (text == "mu") return SweepAxis::Mu;
  throw Error(ErrorKind::InvalidConfig,
              "unknown sweep axis '" + std::string(text) + "' (expected q, debt_to_gdp or mu)");
}

namespace {

SweepRow evaluate(Calibration c, SweepAxis axis, double value, Instrument instrument,
                  Regime regime, const SweepOptions& opt) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.value = value;
  row.multiplier = nan;
  row.r_bar_annualized = nan;
  double mu = opt.mu.value_or(0.0);
  switch (axis) {
    case SweepAxis::Q: c.q = value; break;
    case SweepAxis::DebtToGdp: c.debt_to_gdp = value; break;
    case SweepAxis::Mu: mu = value; break;
  }
  if (opt.repin_eta) c.eta.reset();
  try {
    row.r_bar_annualized = annualize(steady_state_rate(c));
    row.determinate = check_determinacy(c, mu, regime).determinate;
    row.multiplier = analytic_multiplier(c, mu, instrument, regime);
    if (!row.determinate) row.error = "IndeterminateSystem";
  } catch (const Error& e) {
    row.error = std::string(to_string(e.kind()));
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_multiplier(const Calibration& calib, SweepAxis axis,
                                       std::vector<double> grid, Instrument instrument,
                                       Regime regime, const SweepOptions& options) {
  if (axis != SweepAxis::Mu && !options.mu)
    throw Error(ErrorKind::InvalidConfig, "mu must be given explicitly for this sweep axis");
  std::sort(grid.begin(), grid.end());
  Calibration base = calib;
  // Freeze eta at the base value when pinning is disabled.
  if (!options.repin_eta) base.eta = base.eta_value();

  std::vector<SweepRow> rows(grid.size());
  const std::size_t jobs = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), grid.size()));
  auto work = [&](std::size_t first) {
    for (std::size_t k = first; k < grid.size(); k += jobs)
      rows[k] = evaluate(base, axis, grid[k], instrument, regime, options);
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(work, j);
  work(0);
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows) {
  out << "axis,value,multiplier,determinate,r_bar_annualized\n";
  for (const auto& r : rows) {
    out << to_string(axis) << ',' << format_number(r.value) << ',' << format_number(r.multiplier)
        << ',' << (r.determinate ? "true" : "false") << ',' << format_number(r.r_bar_annualized)
        << '\n';
  }
}

}  // namespace olgdebt

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olgdebt/model_core.hpp"

namespace olgdebt {

struct CountryObservation {
  std::string country;
  double debt_to_gdp = 0;  // annual basis, fraction
  double real_rate = 0;    // fraction per annum
  std::optional<int> n_years;
};

/// CSV with header `country,debt_to_gdp,real_rate[,n_years]`.
std::vector<CountryObservation> load_panel(const std::filesystem::path& path);
std::vector<CountryObservation> parse_panel(std::istream& in, const std::string& source = "panel");

struct FittedLine {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
  int n = 0;

  double operator()(double debt_to_gdp) const { return intercept + slope * debt_to_gdp; }
};

FittedLine fit_line(const std::vector<CountryObservation>& panel);

/// Index of the observation lying furthest above the line.
std::size_t max_positive_residual(const std::vector<CountryObservation>& panel,
                                  const FittedLine& line);

struct BetaQCalibration {
  double beta = 0;
  double q = 0;
  std::array<double, 2> anchor_debt{};   // annual debt ratios
  std::array<double, 2> anchor_rates{};  // targets, annual
  std::array<double, 2> model_rates{};   // annualized model rates at the solution
  int iterations = 0;
};

/// Solves for (beta, q) so the annualized steady-state rate hits the line at
/// both anchors. Throws NoRoot when no interior solution exists.
BetaQCalibration calibrate_beta_q(const FittedLine& fitted, PreferenceKind pref,
                                  std::array<double, 2> anchors = {0.6, 1.0},
                                  const Calibration& base = {});

/// Largest gap between the model rate and the line over [lo, hi], annual.
double max_line_gap(const Calibration& calib, const FittedLine& fitted, double lo = 0.6,
                    double hi = 1.0);

nlohmann::ordered_json to_json(const FittedLine& line);
nlohmann::ordered_json to_json(const FittedLine& line, const BetaQCalibration& result);

}  // namespace olgdebt

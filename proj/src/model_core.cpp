#include "olgdebt/model_core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace olgdebt {

std::string_view to_string(PreferenceKind kind) noexcept {
  return kind == PreferenceKind::LogLog ? "loglog" : "ghh";
}

PreferenceKind parse_preference(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "loglog" || lower == "log-log") return PreferenceKind::LogLog;
  if (lower == "ghh") return PreferenceKind::GHH;
  throw Error(ErrorKind::InvalidConfig, "unknown preference '" + std::string(text) +
                                            "' (expected loglog or ghh)");
}

Calibration Calibration::baseline(PreferenceKind pref) {
  Calibration c;
  c.pref = pref;
  if (pref == PreferenceKind::GHH) c.q = 0.9785;
  return c;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidCalibration, what);
}

// Wage at the zero-inflation steady state: real marginal cost (theta-1)/theta
// times the marginal product of labor.
double flexible_wage(const Calibration& c, double L) {
  return (c.theta - 1.0) / c.theta * c.sigma * std::pow(L, c.sigma - 1.0);
}

// Hours implied by labor supply at zero inflation for a given eta.
double steady_hours(const Calibration& c, double eta) {
  const double a = (c.theta - 1.0) / c.theta * c.sigma;
  if (c.pref == PreferenceKind::LogLog) return a / (a + eta);
  return std::pow(a / eta, 1.0 / (c.epsilon - c.sigma));
}

}  // namespace

void Calibration::validate() const {
  require(std::isfinite(beta) && beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  require(std::isfinite(q) && q > 0.0 && q <= 1.0, "q must lie in (0,1]");
  require(std::isfinite(theta) && theta > 1.0, "theta must exceed 1");
  require(std::isfinite(epsilon) && epsilon > 1.0, "epsilon must exceed 1");
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)");
  require(std::isfinite(sigma) && sigma > 0.0 && sigma <= 1.0, "sigma must lie in (0,1]");
  require(std::isfinite(phi_pi) && phi_pi >= 0.0, "phi_pi must be nonnegative");
  require(std::isfinite(phi_y) && phi_y >= 0.0, "phi_y must be nonnegative");
  require(std::isfinite(debt_to_gdp) && debt_to_gdp >= 0.0, "debt_to_gdp must be nonnegative");
  require(std::isfinite(target_hours) && target_hours > 0.0 && target_hours < 1.0,
          "L_bar must lie in (0,1)");
  if (eta) require(std::isfinite(*eta) && *eta > 0.0, "eta must be positive");
  if (pref == PreferenceKind::GHH)
    require(epsilon > sigma, "GHH requires epsilon > sigma");
}

double Calibration::eta_value() const { return eta ? *eta : pin_eta(*this); }

Calibration Calibration::with_pinned_eta() const {
  Calibration c = *this;
  c.eta = pin_eta(*this);
  return c;
}

double pin_eta(const Calibration& calib) {
  const double L = calib.target_hours;
  const double w = flexible_wage(calib, L);
  if (calib.pref == PreferenceKind::LogLog) return w * (1.0 - L) / std::pow(L, calib.sigma);
  return w * std::pow(L, 1.0 - calib.epsilon);
}

double steady_state_rate(const Calibration& calib) {
  calib.validate();
  double denom = 0.0;
  const double gross = gross_rate_closed_form<double>(
      calib.pref, calib.beta, calib.q, calib.debt_to_gdp, calib.eta_value(), calib.theta,
      calib.epsilon, calib.sigma, &denom);
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "steady-state rate denominator " << denom << " <= 0 at debt_to_gdp="
       << calib.debt_to_gdp << ", q=" << calib.q << ", beta=" << calib.beta;
    throw Error(ErrorKind::NonpositiveDenominator, os.str());
  }
  return gross - 1.0;
}

SteadyState solve_steady_state(const Calibration& calib) {
  const double r = steady_state_rate(calib);
  const double eta = calib.eta_value();
  SteadyState ss;
  ss.r_bar = r;
  ss.L = steady_hours(calib, eta);
  ss.Y = std::pow(ss.L, calib.sigma);
  ss.G = 0.0;
  ss.C = ss.Y - ss.G;
  ss.w = flexible_wage(calib, ss.L);
  ss.debt_to_gdp = calib.debt_to_gdp;
  ss.B_prime = (1.0 + r) * calib.debt_to_gdp * ss.Y;
  ss.V = ss.B_prime;
  ss.T = ss.G + ss.B_prime * r / (1.0 + r);
  ss.delta = 1.0 / (1.0 - calib.q * calib.beta);
  ss.pi = 0.0;
  ss.i = r;
  return ss;
}

Eigen::Matrix<double, 7, 1> steady_state_residuals(const Calibration& c, const SteadyState& ss) {
  const double eta = c.eta_value();
  const double R = 1.0 + ss.r_bar;
  Eigen::Matrix<double, 7, 1> res;
  res(0) = ss.Y - ss.C - ss.G;
  res(1) = ss.Y - std::pow(ss.L, c.sigma);
  res(2) = (ss.T - ss.G) - ss.B_prime * (1.0 - 1.0 / R);
  res(3) = ss.delta - 1.0 - c.q * c.beta * ss.delta;
  if (c.pref == PreferenceKind::LogLog) {
    res(4) = ss.C + (1.0 - c.q) / ((1.0 + eta) * c.q) * ss.V / ss.delta - c.beta * R * ss.C;
    res(5) = ss.w * (1.0 - ss.L) - eta * ss.C;
  } else {
    const double disutil = eta / c.epsilon * std::pow(ss.L, c.epsilon);
    res(4) = ss.C + (1.0 - c.q) / c.q * ss.V / ss.delta - disutil -
             c.beta * R * (ss.C - disutil);
    res(5) = ss.w - eta * std::pow(ss.L, c.epsilon - 1.0);
  }
  res(6) = ss.V - ss.B_prime;
  return res;
}

}  // namespace olgdebt

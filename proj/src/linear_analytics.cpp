#include "olgdebt/linear_analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace olgdebt {

namespace {

std::string lowered(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string_view to_string(Instrument x) noexcept {
  return x == Instrument::Debt ? "debt" : "spending";
}

std::string_view to_string(Regime x) noexcept { return x == Regime::Normal ? "normal" : "zlb"; }

Instrument parse_instrument(std::string_view text) {
  const auto s = lowered(text);
  if (s == "debt") return Instrument::Debt;
  if (s == "spending") return Instrument::Spending;
  throw Error(ErrorKind::InvalidConfig, "unknown instrument '" + std::string(text) + "'");
}

Regime parse_regime(std::string_view text) {
  const auto s = lowered(text);
  if (s == "normal") return Regime::Normal;
  if (s == "zlb") return Regime::ZLB;
  throw Error(ErrorKind::InvalidConfig,
              "unknown regime '" + std::string(text) + "' (expected normal or zlb)");
}

LinearCoefficients linear_coefficients(const Calibration& calib) {
  const SteadyState ss = solve_steady_state(calib);
  const double R = 1.0 + ss.r_bar;
  const double common = (1.0 - calib.alpha) * (1.0 / calib.alpha - 1.0 / R) /
                        (1.0 - calib.theta + calib.theta / calib.sigma);
  LinearCoefficients k;
  k.r_bar = ss.r_bar;
  k.one_minus_L = 1.0 - ss.L;
  // Exact at the representative-agent limits, where the debt terms vanish.
  k.beta_1r = calib.q == 1.0 || calib.debt_to_gdp == 0.0 ? 1.0 : calib.beta * R;
  k.kappa = common / (k.one_minus_L * calib.sigma);
  k.kappa_ghh = common * (calib.epsilon / calib.sigma - 1.0);
  k.zeta = 1.0 / (1.0 - calib.sigma / calib.epsilon * (1.0 - 1.0 / calib.theta));
  return k;
}

MultiplierInputs<double> multiplier_inputs(const Calibration& calib, double mu) {
  const LinearCoefficients k = linear_coefficients(calib);
  MultiplierInputs<double> m;
  m.beta_1r = k.beta_1r;
  m.gross_r = 1.0 + k.r_bar;
  m.kappa = calib.pref == PreferenceKind::LogLog ? k.kappa : k.kappa_ghh;
  m.kappa_log = k.kappa;
  m.one_minus_L = k.one_minus_L;
  m.sigma = calib.sigma;
  m.zeta = k.zeta;
  m.theta = calib.theta;
  m.phi_pi = calib.phi_pi;
  m.phi_y = calib.phi_y;
  m.mu = mu;
  return m;
}

double analytic_multiplier(const Calibration& calib, double mu, Instrument instrument,
                           Regime regime) {
  return closed_form_multiplier(calib.pref, instrument, regime, multiplier_inputs(calib, mu));
}

Determinacy check_determinacy(const Calibration& calib, double mu, Regime regime) {
  const auto m = multiplier_inputs(calib, mu);
  // The quadratic equals the multiplier denominator times R (log-log) or
  // times R*theta/zeta (GHH); both factors are positive.
  double scale = m.gross_r;
  if (calib.pref == PreferenceKind::GHH) scale *= m.theta / m.zeta;
  Determinacy d;
  d.margin = scale * multiplier_denominator(calib.pref, regime, m);
  d.determinate = d.margin > 0.0;
  return d;
}

double determinacy_threshold(const Calibration& calib, Regime regime) {
  auto ok = [&](double mu) { return check_determinacy(calib, mu, regime).determinate; };
  if (!ok(0.0)) return 0.0;
  // Scan for the first failing point, then bisect inside that cell.
  const int n = 1000;
  double lo = 0.0, hi = -1.0;
  for (int k = 1; k < n; ++k) {
    const double mu = static_cast<double>(k) / n;
    if (!ok(mu)) {
      hi = mu;
      break;
    }
    lo = mu;
  }
  if (hi < 0.0) {
    if (ok(1.0 - 1e-9)) return 1.0;
    hi = 1.0 - 1e-9;
  }
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

TwoStateSolution solve_two_state(const Calibration& calib, const ShortRunState& st) {
  if (!(st.mu >= 0.0 && st.mu < 1.0))
    throw Error(ErrorKind::InvalidCalibration, "mu must lie in [0,1)");
  const Regime regime = st.zlb ? Regime::ZLB : Regime::Normal;
  const Determinacy det = check_determinacy(calib, st.mu, regime);
  if (!det.determinate) {
    std::ostringstream os;
    os << "mu=" << st.mu << " in " << to_string(regime) << " regime, margin=" << det.margin;
    throw Error(ErrorKind::IndeterminateSystem, os.str());
  }

  const LinearCoefficients k = linear_coefficients(calib);
  const double mu = st.mu;
  const double R = 1.0 + k.r_bar;
  const double b1 = k.beta_1r;
  const double qb = calib.q * calib.beta;
  const bool ghh = calib.pref == PreferenceKind::GHH;

  TwoStateSolution sol;
  sol.delta_hat_S = -qb * (st.r_e_S - std::log(R)) / (1.0 - qb * mu);

  // AD (GHH version scaled by zeta) and NKPC in (y, pi).
  const double curv = ghh ? k.zeta / calib.theta : 1.0;
  const double g_weight = ghh ? k.zeta : 1.0;
  Eigen::Matrix2d A;
  Eigen::Vector2d rhs;
  rhs(0) = g_weight * (b1 - mu) * st.g_S + (b1 - 1.0) * st.b_prime_S -
           (b1 - 1.0) * mu * sol.delta_hat_S;
  if (st.zlb) {
    A(0, 0) = curv * (b1 - mu);
    A(0, 1) = -b1 * mu;
    rhs(0) += b1 * st.r_e_S;
  } else {
    A(0, 0) = curv * (b1 - mu) + b1 * calib.phi_y;
    A(0, 1) = b1 * (calib.phi_pi - mu);
  }
  A(1, 0) = -(ghh ? k.kappa_ghh : k.kappa);
  A(1, 1) = 1.0 - mu / R;
  rhs(1) = ghh ? 0.0 : -k.kappa * k.one_minus_L * calib.sigma * st.g_S;

  const Eigen::Vector2d x = A.partialPivLu().solve(rhs);
  sol.y_S = x(0);
  sol.pi_S = x(1);
  sol.shadow_rate = st.r_e_S + calib.phi_pi * sol.pi_S + calib.phi_y * sol.y_S;
  if (st.zlb) {
    sol.i_S = 0.0;
    sol.regime_consistent = sol.shadow_rate < 0.0;
  } else {
    sol.i_S = sol.shadow_rate;
    sol.regime_consistent = sol.i_S > 0.0;
  }
  return sol;
}

}  // namespace olgdebt

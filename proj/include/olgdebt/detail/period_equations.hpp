#pragma once

#include <cmath>

#include "olgdebt/model_core.hpp"

namespace olgdebt::detail {

// Unknowns per period, in storage order.
enum Var : int { kY, kL, kW, kPi, kI, kR, kDelta, kPStar, kS, kX1, kX2, kNumVars };

struct PeriodConstants {
  PreferenceKind pref;
  double beta, q, theta, sigma, alpha, epsilon, eta, phi_pi, phi_y;
  double policy_rate;  // gross intercept of the rule
  double Y_bar;
  bool track_natural_rate;

  static PeriodConstants from(const Calibration& c, double policy_rate, double Y_bar,
                              bool track) {
    return {c.pref,    c.beta,    c.q,      c.theta,      c.sigma,
            c.alpha,   c.epsilon, c.eta_value(), c.phi_pi, c.phi_y,
            policy_rate, Y_bar,   track};
  }
};

struct PeriodInputs {
  double d = 1;       // xi_{t+1} / xi_t
  double B_prime = 0;
  double G = 0;
  double G_next = 0;
  bool zlb = false;
};

/// Gross rate the unconstrained rule would set.
template <typename S>
S rule_rate(const PeriodConstants& k, const PeriodInputs& in, const S& pi, const S& Y) {
  using std::pow;
  const double intercept = k.track_natural_rate ? k.policy_rate / in.d : k.policy_rate;
  return intercept * pow(pi, k.phi_pi) * pow(Y / k.Y_bar, k.phi_y);
}

/// Residuals of the 11 model equations at one period. `s_prev` is price
/// dispersion in the previous period; `nx` holds next-period unknowns.
template <typename S>
void period_equations(const PeriodConstants& k, const PeriodInputs& in, const S& s_prev,
                      const S* x, const S* nx, S* out) {
  using std::pow;
  const double th = k.theta, sg = k.sigma, al = k.alpha;
  const S C = x[kY] - in.G;
  const S C_next = nx[kY] - in.G_next;
  const S gross_r = 1.0 + x[kR];

  if (k.pref == PreferenceKind::LogLog) {
    out[0] = x[kW] * (1.0 - x[kL]) - k.eta * C;
    out[1] = C_next + (1.0 - k.q) / ((1.0 + k.eta) * k.q) * in.B_prime / nx[kDelta] -
             k.beta * gross_r * in.d * C;
  } else {
    const double e = k.epsilon;
    out[0] = x[kW] - k.eta * pow(x[kL], e - 1.0);
    const S net = C - k.eta / e * pow(x[kL], e);
    const S net_next = C_next - k.eta / e * pow(nx[kL], e);
    out[1] = net_next + (1.0 - k.q) / k.q * in.B_prime / nx[kDelta] -
             k.beta * gross_r * in.d * net;
  }
  out[2] = x[kDelta] - 1.0 - k.q * k.beta * in.d * nx[kDelta];
  out[3] = x[kX1] - x[kW] * pow(x[kY], 1.0 / sg) -
           al * pow(nx[kPi], th / sg) * nx[kX1] / gross_r;
  out[4] = x[kX2] - x[kY] - al * pow(nx[kPi], th - 1.0) * nx[kX2] / gross_r;
  out[5] = pow(x[kPStar], 1.0 + th / sg - th) - th / ((th - 1.0) * sg) * x[kX1] / x[kX2];
  out[6] = 1.0 - al * pow(x[kPi], th - 1.0) - (1.0 - al) * pow(x[kPStar], 1.0 - th);
  out[7] = x[kS] - al * pow(x[kPi], th / sg) * s_prev - (1.0 - al) * pow(x[kPStar], -th / sg);
  out[8] = x[kL] - pow(x[kY], 1.0 / sg) * x[kS];
  out[9] = gross_r * nx[kPi] - (1.0 + x[kI]);
  if (in.zlb)
    out[10] = x[kI];
  else
    out[10] = (1.0 + x[kI]) - rule_rate(k, in, x[kPi], x[kY]);
}

}  // namespace olgdebt::detail

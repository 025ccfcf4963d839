#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "olgdebt/error.hpp"

namespace olgdebt {

/// Brent's method on a bracket with f(a) and f(b) of opposite sign.
template <typename F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol = 1e-14,
                  double ftol = 0.0, int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw Error(ErrorKind::BracketFailure, "root is not bracketed");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || std::abs(fb) <= ftol) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, qq;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        qq = 1.0 - s;
      } else {
        const double t = fa / fc, r = fb / fc;
        p = s * (2.0 * m * t * (t - r) - (b - a) * (r - 1.0));
        qq = (t - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) qq = -qq;
      else p = -p;
      if (2.0 * p < std::min(3.0 * m * qq - std::abs(tol * qq), std::abs(e * qq))) {
        e = d;
        d = p / qq;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

}  // namespace olgdebt

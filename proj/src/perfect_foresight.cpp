#include "olgdebt/perfect_foresight.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/AutoDiff>

#include "olgdebt/detail/period_equations.hpp"
#include "olgdebt/roots.hpp"

namespace olgdebt {

using detail::kNumVars;
using detail::PeriodConstants;
using detail::PeriodInputs;

double ShockSpec::level(int t) const {
  if (t >= 1 && t <= static_cast<int>(xi.size())) return xi[t - 1];
  return 1.0;
}

double ShockSpec::growth(int t) const { return level(t + 1) / level(t); }

ShockSpec ShockSpec::constant_growth(double g, int length) {
  if (!(g > 0.0) || length < 0)
    throw Error(ErrorKind::InvalidConfig, "shock growth must be positive");
  ShockSpec s;
  s.recession_length = length;
  s.xi.resize(length);
  for (int t = 1; t <= length; ++t) s.xi[t - 1] = std::pow(g, -(length + 1 - t));
  return s;
}

std::string_view to_string(PlanKind kind) noexcept {
  switch (kind) {
    case PlanKind::None: return "none";
    case PlanKind::Temporary: return "temporary";
    case PlanKind::Permanent: return "permanent";
  }
  return "?";
}

PlanKind parse_plan(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "none") return PlanKind::None;
  if (s == "temporary") return PlanKind::Temporary;
  if (s == "permanent") return PlanKind::Permanent;
  throw Error(ErrorKind::InvalidConfig, "unknown plan '" + std::string(text) +
                                            "' (expected none, temporary or permanent)");
}

int SimulationPath::zlb_periods() const {
  return static_cast<int>(std::count(zlb.begin(), zlb.end(), true));
}

TerminalState initial_state(const Calibration& calib) {
  const SteadyState ss = solve_steady_state(calib);
  const double R = 1.0 + ss.r_bar;
  TerminalState t;
  t.Y = ss.Y;
  t.L = ss.L;
  t.w = ss.w;
  t.pi = 1.0;
  t.i = ss.r_bar;
  t.r = ss.r_bar;
  t.delta = ss.delta;
  t.p_star = 1.0;
  t.s = 1.0;
  t.x1 = ss.w * std::pow(ss.Y, 1.0 / calib.sigma) / (1.0 - calib.alpha / R);
  t.x2 = ss.Y / (1.0 - calib.alpha / R);
  t.B_prime = ss.B_prime;
  return t;
}

namespace {

double debt_step_level(const TerminalState& init, double step) {
  // Annual ratio change times four quarters, inclusive of interest.
  return 4.0 * step * init.Y * (1.0 + init.r);
}

// Steady state with trend inflation: every period equation holds with d = 1
// and the rule intercept at the initial rate. Unknowns are (pi, Y).
template <typename S>
struct TrendState {
  S pi, Y, p_star, s, L, w, gross_i, R, x1, x2;
};

template <typename S>
TrendState<S> trend_state(const PeriodConstants& k, const S& pi, const S& Y) {
  using std::pow;
  const double th = k.theta, sg = k.sigma, al = k.alpha;
  TrendState<S> st{pi, Y, S(0), S(0), S(0), S(0), S(0), S(0), S(0), S(0)};
  st.p_star = pow((1.0 - al * pow(pi, th - 1.0)) / (1.0 - al), 1.0 / (1.0 - th));
  st.s = (1.0 - al) * pow(st.p_star, -th / sg) / (1.0 - al * pow(pi, th / sg));
  st.L = pow(Y, 1.0 / sg) * st.s;
  if (k.pref == PreferenceKind::LogLog)
    st.w = k.eta * Y / (1.0 - st.L);
  else
    st.w = k.eta * pow(st.L, k.epsilon - 1.0);
  st.gross_i = k.policy_rate * pow(pi, k.phi_pi) * pow(Y / k.Y_bar, k.phi_y);
  st.R = st.gross_i / pi;
  st.x1 = st.w * pow(Y, 1.0 / sg) / (1.0 - al * pow(pi, th / sg) / st.R);
  st.x2 = Y / (1.0 - al * pow(pi, th - 1.0) / st.R);
  return st;
}

template <typename S>
Eigen::Matrix<S, 2, 1> trend_residuals(const PeriodConstants& k, double B_prime, const S& pi,
                                       const S& Y) {
  using std::pow;
  const double th = k.theta, sg = k.sigma;
  const auto st = trend_state(k, pi, Y);
  const double delta = 1.0 / (1.0 - k.q * k.beta);
  Eigen::Matrix<S, 2, 1> f;
  f(0) = pow(st.p_star, 1.0 + th / sg - th) - th / ((th - 1.0) * sg) * st.x1 / st.x2;
  if (k.pref == PreferenceKind::LogLog) {
    f(1) = Y + (1.0 - k.q) / ((1.0 + k.eta) * k.q) * B_prime / delta - k.beta * st.R * Y;
  } else {
    const S net = Y - k.eta / k.epsilon * pow(st.L, k.epsilon);
    f(1) = net + (1.0 - k.q) / k.q * B_prime / delta - k.beta * st.R * net;
  }
  return f;
}

}  // namespace

TerminalState terminal_state(const Calibration& calib, const FiscalPlan& plan) {
  TerminalState init = initial_state(calib);
  if (plan.kind != PlanKind::Permanent || plan.debt_step == 0.0) return init;

  const PeriodConstants k = PeriodConstants::from(calib, 1.0 + init.r, init.Y, true);
  const double B_new = init.B_prime + debt_step_level(init, plan.debt_step);
  using AD = Eigen::AutoDiffScalar<Eigen::Vector2d>;
  Eigen::Vector2d v(1.0, init.Y);
  double norm = 0.0;
  for (int it = 0; it < 50; ++it) {
    const AD pi(v(0), 2, 0), Y(v(1), 2, 1);
    const auto f = trend_residuals<AD>(k, B_new, pi, Y);
    Eigen::Vector2d fv(f(0).value(), f(1).value());
    norm = fv.cwiseAbs().maxCoeff();
    if (norm < 1e-14) break;
    Eigen::Matrix2d J;
    J.row(0) = f(0).derivatives().transpose();
    J.row(1) = f(1).derivatives().transpose();
    v -= J.partialPivLu().solve(fv);
  }
  if (!(norm < 1e-12))
    throw NoConvergenceError(50, norm, "terminal steady state after permanent debt change");

  const auto st = trend_state<double>(k, v(0), v(1));
  TerminalState t;
  t.Y = st.Y;
  t.L = st.L;
  t.w = st.w;
  t.pi = st.pi;
  t.i = st.gross_i - 1.0;
  t.r = st.R - 1.0;
  t.delta = 1.0 / (1.0 - calib.q * calib.beta);
  t.p_star = st.p_star;
  t.s = st.s;
  t.x1 = st.x1;
  t.x2 = st.x2;
  t.B_prime = B_new;
  return t;
}

Eigen::VectorXd debt_path(const Calibration& calib, const FiscalPlan& plan, int horizon) {
  const TerminalState init = initial_state(calib);
  Eigen::VectorXd B = Eigen::VectorXd::Constant(horizon, init.B_prime);
  const double step = debt_step_level(init, plan.debt_step);
  if (plan.kind == PlanKind::Temporary) {
    if (plan.revert_period <= 1)
      throw Error(ErrorKind::InvalidConfig, "temporary plan needs revert_period > 1");
    for (int t = 1; t < std::min(plan.revert_period, horizon + 1); ++t) B(t - 1) += step;
  } else if (plan.kind == PlanKind::Permanent) {
    B.array() += step;
  }
  return B;
}

namespace {

struct Problem {
  int T = 0;
  PeriodConstants k;
  std::vector<PeriodInputs> inputs;
  TerminalState term;
  std::array<double, kNumVars> terminal{};
  double B0 = 0;  // B'_0
};

std::array<double, kNumVars> pack(const TerminalState& t) {
  std::array<double, kNumVars> a{};
  a[detail::kY] = t.Y;
  a[detail::kL] = t.L;
  a[detail::kW] = t.w;
  a[detail::kPi] = t.pi;
  a[detail::kI] = t.i;
  a[detail::kR] = t.r;
  a[detail::kDelta] = t.delta;
  a[detail::kPStar] = t.p_star;
  a[detail::kS] = t.s;
  a[detail::kX1] = t.x1;
  a[detail::kX2] = t.x2;
  return a;
}

double g_at(const FiscalPlan& plan, int t) {
  if (t >= 1 && t <= static_cast<int>(plan.g_path.size())) return plan.g_path[t - 1];
  return 0.0;
}

Problem make_problem(const Calibration& calib, const ShockSpec& shocks, const FiscalPlan& plan,
                     int T, bool track) {
  if (static_cast<int>(shocks.xi.size()) > T || static_cast<int>(plan.g_path.size()) > T)
    throw Error(ErrorKind::DimensionMismatch, "shock or spending path longer than the horizon");
  for (double x : shocks.xi)
    if (!(x > 0.0)) throw Error(ErrorKind::InvalidConfig, "xi levels must be positive");
  const TerminalState init = initial_state(calib);
  Problem p;
  p.T = T;
  p.k = PeriodConstants::from(calib, 1.0 + init.r, init.Y, track);
  p.term = terminal_state(calib, plan);
  p.terminal = pack(p.term);
  p.B0 = init.B_prime;
  const Eigen::VectorXd B = debt_path(calib, plan, T);
  p.inputs.resize(T);
  for (int t = 1; t <= T; ++t) {
    auto& in = p.inputs[t - 1];
    in.d = shocks.growth(t);
    in.B_prime = B(t - 1);
    in.G = g_at(plan, t);
    in.G_next = g_at(plan, t + 1);
  }
  return p;
}

// Model residuals for unknowns X (period-major).
Eigen::VectorXd model_residuals(const Problem& p, const Eigen::VectorXd& X) {
  Eigen::VectorXd F(p.T * kNumVars);
  for (int t = 0; t < p.T; ++t) {
    const double* x = X.data() + t * kNumVars;
    const double* nx = t + 1 < p.T ? X.data() + (t + 1) * kNumVars : p.terminal.data();
    const double s_prev = t > 0 ? X(t * kNumVars - kNumVars + detail::kS) : 1.0;
    detail::period_equations<double>(p.k, p.inputs[t], s_prev, x, nx, F.data() + t * kNumVars);
  }
  return F;
}

using ADScalar = Eigen::AutoDiffScalar<Eigen::Matrix<double, 3 * kNumVars, 1>>;

Eigen::SparseMatrix<double> model_jacobian(const Problem& p, const Eigen::VectorXd& X) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(p.T) * kNumVars * 12);
  constexpr int nd = 3 * kNumVars;
  std::array<ADScalar, nd> v;
  std::array<ADScalar, kNumVars> out;
  for (int t = 0; t < p.T; ++t) {
    const bool has_prev = t > 0, has_next = t + 1 < p.T;
    for (int b = 0; b < 3; ++b) {
      for (int j = 0; j < kNumVars; ++j) {
        const int idx = b * kNumVars + j;
        double val;
        bool live = true;
        if (b == 0) {
          live = has_prev;
          val = has_prev ? X((t - 1) * kNumVars + j) : (j == detail::kS ? 1.0 : 0.0);
        } else if (b == 1) {
          val = X(t * kNumVars + j);
        } else {
          live = has_next;
          val = has_next ? X((t + 1) * kNumVars + j) : p.terminal[j];
        }
        v[idx] = live ? ADScalar(val, nd, idx) : ADScalar(val);
      }
    }
    detail::period_equations<ADScalar>(p.k, p.inputs[t], v[detail::kS], v.data() + kNumVars,
                                       v.data() + 2 * kNumVars, out.data());
    for (int e = 0; e < kNumVars; ++e) {
      const auto& der = out[e].derivatives();
      for (int idx = 0; idx < nd; ++idx) {
        if (der(idx) == 0.0) continue;
        const int col = (t - 1 + idx / kNumVars) * kNumVars + idx % kNumVars;
        trip.emplace_back(t * kNumVars + e, col, der(idx));
      }
    }
  }
  Eigen::SparseMatrix<double> J(p.T * kNumVars, p.T * kNumVars);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

double max_abs(const Eigen::VectorXd& v) {
  if (!v.allFinite()) return std::numeric_limits<double>::infinity();
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

int newton(const Problem& p, Eigen::VectorXd& X, const SimulationOptions& opt) {
  Eigen::VectorXd F = model_residuals(p, X);
  double norm = max_abs(F);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  for (int it = 0; it < opt.max_newton_iterations; ++it) {
    if (norm < opt.tolerance) return it;
    const Eigen::SparseMatrix<double> J = model_jacobian(p, X);
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw NoConvergenceError(it, norm, "singular Jacobian in perfect-foresight Newton");
    const Eigen::VectorXd dx = lu.solve(-F);
    double lam = 1.0;
    Eigen::VectorXd Xn, Fn;
    double norm_n = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= opt.max_halvings; ++h) {
      Xn = X + lam * dx;
      Fn = model_residuals(p, Xn);
      norm_n = max_abs(Fn);
      if (norm_n < norm) break;
      lam *= 0.5;
    }
    if (!std::isfinite(norm_n))
      throw NoConvergenceError(it + 1, norm, "perfect-foresight Newton left the model domain");
    X = std::move(Xn);
    F = std::move(Fn);
    norm = norm_n;
  }
  if (norm < opt.tolerance) return opt.max_newton_iterations;
  throw NoConvergenceError(opt.max_newton_iterations, norm, "perfect-foresight Newton");
}

Eigen::VectorXd shadow_gross(const Problem& p, const Eigen::VectorXd& X) {
  Eigen::VectorXd sh(p.T);
  for (int t = 0; t < p.T; ++t)
    sh(t) = detail::rule_rate<double>(p.k, p.inputs[t], X(t * kNumVars + detail::kPi),
                                      X(t * kNumVars + detail::kY));
  return sh;
}

Eigen::VectorXd column(const Eigen::VectorXd& X, int T, int var) {
  Eigen::VectorXd c(T);
  for (int t = 0; t < T; ++t) c(t) = X(t * kNumVars + var);
  return c;
}

SimulationPath unpack(const Problem& p, const Eigen::VectorXd& X, const ShockSpec& shocks) {
  const int T = p.T;
  SimulationPath path;
  path.Y = column(X, T, detail::kY);
  path.L = column(X, T, detail::kL);
  path.w = column(X, T, detail::kW);
  path.pi = column(X, T, detail::kPi);
  path.i = column(X, T, detail::kI);
  path.r = column(X, T, detail::kR);
  path.delta = column(X, T, detail::kDelta);
  path.p_star = column(X, T, detail::kPStar);
  path.s = column(X, T, detail::kS);
  path.x1 = column(X, T, detail::kX1);
  path.x2 = column(X, T, detail::kX2);
  path.C.resize(T);
  path.B_prime.resize(T);
  path.taxes.resize(T);
  path.xi.resize(T);
  for (int t = 0; t < T; ++t) {
    const auto& in = p.inputs[t];
    const double B_prev = t > 0 ? p.inputs[t - 1].B_prime : p.B0;
    path.C(t) = path.Y(t) - in.G;
    path.B_prime(t) = in.B_prime;
    path.taxes(t) = in.G + B_prev - in.B_prime / (1.0 + path.r(t));
    path.xi(t) = shocks.level(t + 1);
  }
  path.V = path.B_prime;
  path.shadow_rate = shadow_gross(p, X).array() - 1.0;
  path.zlb.resize(T);
  for (int t = 0; t < T; ++t) {
    path.zlb[t] = p.inputs[t].zlb;
    if (path.zlb[t]) path.i(t) = 0.0;  // drop round-off left by Newton
  }
  return path;
}

Eigen::VectorXd pack_path(const SimulationPath& path) {
  const int T = path.horizon();
  Eigen::VectorXd X(T * kNumVars);
  const Eigen::VectorXd* cols[kNumVars] = {&path.Y,     &path.L,      &path.w, &path.pi,
                                           &path.i,     &path.r,      &path.delta,
                                           &path.p_star, &path.s,     &path.x1, &path.x2};
  for (int v = 0; v < kNumVars; ++v) {
    if (cols[v]->size() != T)
      throw Error(ErrorKind::DimensionMismatch, "path arrays have inconsistent lengths");
    for (int t = 0; t < T; ++t) X(t * kNumVars + v) = (*cols[v])(t);
  }
  return X;
}

}  // namespace

SimulationPath steady_state_path(const Calibration& calib, int horizon) {
  const TerminalState s = initial_state(calib);
  const auto a = pack(s);
  Eigen::VectorXd X(horizon * kNumVars);
  for (int t = 0; t < horizon; ++t)
    for (int v = 0; v < kNumVars; ++v) X(t * kNumVars + v) = a[v];
  const Problem p = make_problem(calib, ShockSpec::none(0), FiscalPlan{}, horizon, true);
  return unpack(p, X, ShockSpec::none(0));
}

Eigen::VectorXd residuals(const SimulationPath& path, const Calibration& calib,
                          const ShockSpec& shocks, const FiscalPlan& plan,
                          const TerminalState& terminal, bool track_natural_rate) {
  const int T = path.horizon();
  const Eigen::VectorXd X = pack_path(path);
  for (const auto* v : {&path.C, &path.B_prime, &path.taxes, &path.V})
    if (v->size() != T)
      throw Error(ErrorKind::DimensionMismatch, "path arrays have inconsistent lengths");
  Problem p = make_problem(calib, shocks, plan, T, track_natural_rate);
  p.term = terminal;
  p.terminal = pack(terminal);

  Eigen::VectorXd out(T * kResidualsPerPeriod);
  std::array<double, kNumVars> f{};
  for (int t = 0; t < T; ++t) {
    const double* x = X.data() + t * kNumVars;
    const double* nx = t + 1 < T ? X.data() + (t + 1) * kNumVars : p.terminal.data();
    const double s_prev = t > 0 ? path.s(t - 1) : 1.0;
    PeriodInputs in = p.inputs[t];
    // Equation 10 in max form: 1+i = max(1, rule).
    in.zlb = detail::rule_rate<double>(p.k, in, x[detail::kPi], x[detail::kY]) < 1.0;
    detail::period_equations<double>(p.k, in, s_prev, x, nx, f.data());
    double* o = out.data() + t * kResidualsPerPeriod;
    std::copy(f.begin(), f.end(), o);
    const double G = in.G;
    const double B_prev = t > 0 ? path.B_prime(t - 1) : p.B0;
    o[11] = path.Y(t) - path.C(t) - G;
    o[12] = (G - path.taxes(t)) - (path.B_prime(t) / (1.0 + path.r(t)) - B_prev);
    o[13] = path.V(t) - path.B_prime(t);
  }
  return out;
}

double walras_residual(const SimulationPath& path, const Calibration& calib) {
  const TerminalState init = initial_state(calib);
  double worst = 0.0;
  for (int t = 0; t < path.horizon(); ++t) {
    const double B_prev = t > 0 ? path.B_prime(t - 1) : init.B_prime;
    const double wages = path.w(t) * path.L(t);
    const double profits = path.Y(t) - wages;
    const double uses = path.C(t) + path.taxes(t) + path.V(t) / (1.0 + path.r(t));
    const double sources = wages + profits + B_prev;
    worst = std::max(worst, std::abs(uses - sources));
  }
  return worst;
}

namespace {

SimulationPath iterate_regimes(Problem p, Eigen::VectorXd X, const Calibration& calib,
                               const ShockSpec& shocks, const FiscalPlan& plan,
                               const SimulationOptions& opt) {
  const int T = p.T;
  std::vector<std::vector<bool>> seen;
  int total_newton = 0;
  for (int outer = 1; outer <= opt.max_regime_iterations; ++outer) {
    total_newton += newton(p, X, opt);
    const Eigen::VectorXd sh = shadow_gross(p, X);
    std::vector<bool> flags(T), current(T);
    for (int t = 0; t < T; ++t) {
      flags[t] = sh(t) < 1.0;
      current[t] = p.inputs[t].zlb;
    }
    if (flags == current) {
      SimulationPath path = unpack(p, X, shocks);
      path.newton_iterations = total_newton;
      path.regime_iterations = outer;
      path.max_residual =
          max_abs(residuals(path, calib, shocks, plan, p.term, opt.track_natural_rate));
      return path;
    }
    seen.push_back(current);
    if (std::find(seen.begin(), seen.end(), flags) != seen.end())
      throw Error(ErrorKind::RegimeCycleDetected, "ZLB regime sequence revisits an earlier guess");
    for (int t = 0; t < T; ++t) p.inputs[t].zlb = flags[t];
  }
  throw Error(ErrorKind::RegimeCycleDetected, "ZLB regime iteration did not settle");
}

}  // namespace

SimulationPath solve_path(const Calibration& calib, const ShockSpec& shocks,
                          const FiscalPlan& plan, const SimulationOptions& opt,
                          const SimulationPath* warm_start) {
  const int T = opt.horizon;
  if (T < shocks.recession_length + 40) {
    std::ostringstream os;
    os << "horizon " << T << " shorter than recession length + 40";
    throw Error(ErrorKind::InvalidConfig, os.str());
  }
  Problem p = make_problem(calib, shocks, plan, T, opt.track_natural_rate);

  if (warm_start && warm_start->horizon() == T) {
    Problem warm = p;
    for (int t = 0; t < T; ++t) warm.inputs[t].zlb = warm_start->zlb[t];
    try {
      return iterate_regimes(warm, pack_path(*warm_start), calib, shocks, plan, opt);
    } catch (const NoConvergenceError&) {
      // The warm regime guess can have no solution (a long peg after a
      // large debt change); fall through to the cold start.
    }
  }
  return iterate_regimes(p, pack_path(steady_state_path(calib, T)), calib, shocks, plan, opt);
}

ShockSpec calibrate_shock(const Calibration& calib, double target_drop, int recession_length,
                          const SimulationOptions& opt) {
  if (!(target_drop >= 0.0 && target_drop <= 0.10))
    throw Error(ErrorKind::InvalidConfig, "target output drop must lie in [0, 0.10]");
  if (target_drop == 0.0) return ShockSpec::none(recession_length);

  const double Y_bar = initial_state(calib).Y;
  std::optional<SimulationPath> warm;
  auto gap = [&](double g) {
    const SimulationPath path = solve_path(calib, ShockSpec::constant_growth(g, recession_length),
                                           FiscalPlan{}, opt, warm ? &*warm : nullptr);
    warm = path;
    return path.Y(0) / Y_bar - 1.0 + target_drop;
  };

  // Grow the bracket geometrically from a small shock; large first guesses
  // can push Newton out of the model domain.
  double lo = 1.0, f_lo = target_drop;
  double step = 5e-4;
  for (int k = 0; k < 40; ++k) {
    const double hi = 1.0 + step;
    double f_hi;
    try {
      f_hi = gap(hi);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "solver failed at growth " << hi << " before bracketing the target: " << e.what();
      throw Error(ErrorKind::BracketFailure, os.str());
    }
    if (f_hi < 0.0) {
      const double g = brent_root(gap, lo, hi, f_lo, f_hi, 1e-15, 1e-12);
      return ShockSpec::constant_growth(g, recession_length);
    }
    lo = hi;
    f_lo = f_hi;
    step *= 1.5;
  }
  throw Error(ErrorKind::BracketFailure, "no shock up to the search limit reaches the target");
}

ShockSpec mild_shock(const ShockSpec& zlb_shock) {
  ShockSpec s = zlb_shock;
  for (double& x : s.xi) x = std::sqrt(x);
  return s;
}

double present_value_multiplier(const SimulationPath& base, const SimulationPath& treat, int k) {
  if (base.horizon() != treat.horizon() || k >= treat.horizon())
    throw Error(ErrorKind::DimensionMismatch, "paths differ in length or are shorter than k");
  double disc = 1.0, num = 0.0, den = 0.0;
  for (int j = 0; j <= k; ++j) {
    disc /= 1.0 + treat.r(j);
    num += disc * (treat.Y(j) - base.Y(j));
    den += disc * (treat.B_prime(j) - base.B_prime(j));
  }
  return num / den;
}

namespace {

MultiplierReport make_report(const Calibration& calib, const SimulationPath& base,
                             const SimulationPath& treat) {
  const double Y_bar = initial_state(calib).Y;
  MultiplierReport r;
  r.k = 8;
  const double dB = treat.B_prime(0) - base.B_prime(0);
  const double dY = treat.Y(0) - base.Y(0);
  r.impact = dY / dB;
  r.present_value = present_value_multiplier(base, treat, r.k);
  r.baseline_zlb_periods = base.zlb_periods();
  r.treatment_zlb_periods = treat.zlb_periods();
  if (r.baseline_zlb_periods == 0 && r.treatment_zlb_periods == 0)
    r.regime_label = "Normal";
  else if (r.baseline_zlb_periods > 0 && r.treatment_zlb_periods > 0)
    r.regime_label = "ZLB";
  else
    r.regime_label = "Mixed";
  r.output_gain = dY / Y_bar;
  r.debt_change = dB / Y_bar;
  r.max_residual = std::max(base.max_residual, treat.max_residual);
  return r;
}

}  // namespace

MultiplierReport debt_multiplier_experiment(const Calibration& calib, const ShockSpec& shocks,
                                            const FiscalPlan& plan,
                                            const SimulationOptions& opt) {
  if (plan.kind == PlanKind::None)
    throw Error(ErrorKind::InvalidConfig, "a multiplier experiment needs a debt plan");
  if (plan.debt_step == 0.0) throw Error(ErrorKind::InvalidConfig, "debt_step must be nonzero");
  const SimulationPath base = solve_path(calib, shocks, FiscalPlan{}, opt);
  const SimulationPath treat = solve_path(calib, shocks, plan, opt, &base);
  return make_report(calib, base, treat);
}

std::vector<DebtLevelResult> debt_level_experiment(const Calibration& calib,
                                                   const std::vector<double>& grid,
                                                   double target_drop, const FiscalPlan& plan,
                                                   const SimulationOptions& opt, int jobs) {
  if (grid.empty()) throw Error(ErrorKind::InvalidConfig, "debt grid is empty");
  if (plan.kind == PlanKind::None)
    throw Error(ErrorKind::InvalidConfig, "a debt-level experiment needs a debt plan");
  Calibration first = calib;
  first.debt_to_gdp = 4.0 * grid.front();
  const ShockSpec shock = calibrate_shock(first, target_drop, 8, opt);

  std::vector<DebtLevelResult> out(grid.size());
  std::vector<std::string> errors(grid.size());
  auto run = [&](std::size_t k) {
    try {
      Calibration c = calib;
      c.debt_to_gdp = 4.0 * grid[k];
      DebtLevelResult& res = out[k];
      res.debt_to_gdp_annual = grid[k];
      res.r_bar_annualized = annualize(steady_state_rate(c));
      res.baseline = solve_path(c, shock, FiscalPlan{}, opt);
      res.treatment = solve_path(c, shock, plan, opt, &res.baseline);
      res.report = make_report(c, res.baseline, res.treatment);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  };
  const std::size_t n = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), grid.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < n; ++j)
    pool.emplace_back([&, j] {
      for (std::size_t k = j; k < grid.size(); k += n) run(k);
    });
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (!errors[k].empty()) throw Error(ErrorKind::NoConvergence, "debt level " + std::to_string(grid[k]) + ": " + errors[k]);
  return out;
}

}  // namespace olgdebt

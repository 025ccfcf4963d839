#include "olgdebt/empirics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace olgdebt {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void parse_fail(const std::string& source, int row, const std::string& what) {
  throw Error(ErrorKind::ParseError, source + " row " + std::to_string(row) + ": " + what);
}

double parse_double(const std::string& s, const std::string& source, int row, const char* name) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    parse_fail(source, row, std::string("bad ") + name + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<CountryObservation> parse_panel(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::EmptyPanel, source + " is empty");
  const auto header = split(line);
  const bool with_years = header.size() == 4 && header[3] == "n_years";
  if (header.size() < 3 || header[0] != "country" || header[1] != "debt_to_gdp" ||
      header[2] != "real_rate" || (header.size() == 4 && !with_years) || header.size() > 4)
    parse_fail(source, 1, "header must be country,debt_to_gdp,real_rate[,n_years]");

  std::vector<CountryObservation> out;
  std::set<std::string> names;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split(line);
    if (f.size() != header.size())
      parse_fail(source, row, "expected " + std::to_string(header.size()) + " fields");
    CountryObservation obs;
    obs.country = f[0];
    if (obs.country.empty()) parse_fail(source, row, "empty country");
    obs.debt_to_gdp = parse_double(f[1], source, row, "debt_to_gdp");
    obs.real_rate = parse_double(f[2], source, row, "real_rate");
    if (!(obs.debt_to_gdp > 0.0)) parse_fail(source, row, "debt_to_gdp must be positive");
    if (with_years) {
      int n = 0;
      const auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), n);
      if (ec != std::errc() || ptr != f[3].data() + f[3].size() || n <= 0)
        parse_fail(source, row, "bad n_years '" + f[3] + "'");
      obs.n_years = n;
    }
    if (!names.insert(obs.country).second)
      parse_fail(source, row, "duplicate country '" + obs.country + "'");
    out.push_back(std::move(obs));
  }
  if (out.empty()) throw Error(ErrorKind::EmptyPanel, source + " has no observations");
  return out;
}

std::vector<CountryObservation> load_panel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_panel(in, path.string());
}

FittedLine fit_line(const std::vector<CountryObservation>& panel) {
  const auto n = static_cast<Eigen::Index>(panel.size());
  if (n < 2) throw Error(ErrorKind::DegenerateDesign, "need at least two observations");
  Eigen::VectorXd x(n), y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x(k) = panel[k].debt_to_gdp;
    y(k) = panel[k].real_rate;
  }
  const double mx = x.mean(), my = y.mean();
  const Eigen::VectorXd dx = x.array() - mx, dy = y.array() - my;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0) || (x.array() == x(0)).all())
    throw Error(ErrorKind::DegenerateDesign, "all debt_to_gdp values are equal");
  FittedLine line;
  line.n = static_cast<int>(n);
  line.slope = dx.dot(dy) / sxx;
  line.intercept = my - line.slope * mx;
  const double syy = dy.squaredNorm();
  const double sse = (dy - line.slope * dx).squaredNorm();
  line.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return line;
}

std::size_t max_positive_residual(const std::vector<CountryObservation>& panel,
                                  const FittedLine& line) {
  if (panel.empty()) throw Error(ErrorKind::EmptyPanel, "no observations");
  std::size_t best = 0;
  double best_res = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < panel.size(); ++k) {
    const double res = panel[k].real_rate - line(panel[k].debt_to_gdp);
    if (res > best_res) {
      best_res = res;
      best = k;
    }
  }
  return best;
}

namespace {

// Annualized model rate; NaN when the closed form's denominator is not positive.
double model_rate(PreferenceKind pref, double beta, double q, double annual_debt, double eta,
                  const Calibration& base) {
  double denom = 0.0;
  const double gross = gross_rate_closed_form<double>(pref, beta, q, 4.0 * annual_debt, eta,
                                                      base.theta, base.epsilon, base.sigma,
                                                      &denom);
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return annualize(gross - 1.0);
}

}  // namespace

BetaQCalibration calibrate_beta_q(const FittedLine& fitted, PreferenceKind pref,
                                  std::array<double, 2> anchors, const Calibration& base_in) {
  Calibration base = base_in;
  base.pref = pref;
  base.validate();
  const double eta = base.eta_value();

  BetaQCalibration out;
  out.anchor_debt = anchors;
  for (int k = 0; k < 2; ++k) out.anchor_rates[k] = fitted(anchors[k]);
  if (!(out.anchor_rates[0] > 0.0) || !(out.anchor_rates[1] > 0.0))
    throw Error(ErrorKind::NoRoot, "fitted line gives nonpositive rates at the anchors");

  constexpr double lo = 1e-6, hi = 1.0 - 1e-9;
  auto project = [&](Eigen::Vector2d v) { return v.cwiseMax(lo).cwiseMin(hi); };
  auto F = [&](const Eigen::Vector2d& v) {
    Eigen::Vector2d f;
    for (int k = 0; k < 2; ++k)
      f(k) = model_rate(pref, v(0), v(1), anchors[k], eta, base) - out.anchor_rates[k];
    return f;
  };
  auto merit = [](const Eigen::Vector2d& f) {
    return f.allFinite() ? f.cwiseAbs().maxCoeff() : std::numeric_limits<double>::infinity();
  };

  Eigen::Vector2d v(0.99, 0.95);
  Eigen::Vector2d f = F(v);
  double m = merit(f);
  int it = 0;
  for (; it < 200 && m >= 1e-13; ++it) {
    Eigen::Matrix2d J;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d vp = v, vm = v;
      const double h = 1e-7 * std::max(1e-3, 1.0 - v(j));
      vp(j) += h;
      vm(j) -= h;
      J.col(j) = (F(vp) - F(vm)) / (2.0 * h);
    }
    if (!J.allFinite() || std::abs(J.determinant()) < 1e-300) break;
    const Eigen::Vector2d step = J.partialPivLu().solve(-f);
    double lam = 1.0;
    bool moved = false;
    for (int h = 0; h < 40; ++h, lam *= 0.5) {
      const Eigen::Vector2d vn = project(v + lam * step);
      const Eigen::Vector2d fn = F(vn);
      if (merit(fn) < m) {
        v = vn;
        f = fn;
        m = merit(fn);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.beta = v(0);
  out.q = v(1);
  out.iterations = it;
  for (int k = 0; k < 2; ++k) out.model_rates[k] = f(k) + out.anchor_rates[k];

  const bool boundary = v(0) <= lo || v(0) >= 1.0 - 1e-6 || v(1) <= lo || v(1) >= 1.0 - 1e-6;
  if (!(m < 1e-10) || boundary) {
    std::ostringstream os;
    os << (boundary ? "boundary solution" : "no convergence") << " at beta=" << v(0)
       << ", q=" << v(1) << "; residuals " << f(0) << ", " << f(1);
    throw Error(ErrorKind::NoRoot, os.str());
  }
  return out;
}

double max_line_gap(const Calibration& calib, const FittedLine& fitted, double lo, double hi) {
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    Calibration c = calib;
    const double a = lo + (hi - lo) * k / 100.0;
    c.debt_to_gdp = 4.0 * a;
    worst = std::max(worst, std::abs(annualize(steady_state_rate(c)) - fitted(a)));
  }
  return worst;
}

nlohmann::ordered_json to_json(const FittedLine& line) {
  nlohmann::ordered_json j;
  j["intercept"] = line.intercept;
  j["slope"] = line.slope;
  j["r2"] = line.r_squared;
  j["n"] = line.n;
  return j;
}

nlohmann::ordered_json to_json(const FittedLine& line, const BetaQCalibration& r) {
  nlohmann::ordered_json j = to_json(line);
  j["beta"] = r.beta;
  j["q"] = r.q;
  nlohmann::ordered_json anchors = nlohmann::ordered_json::array();
  for (int k = 0; k < 2; ++k)
    anchors.push_back({{"debt_to_gdp", r.anchor_debt[k]},
                       {"target", r.anchor_rates[k]},
                       {"model", r.model_rates[k]}});
  j["anchor_rates"] = anchors;
  return j;
}

}  // namespace olgdebt

#include <doctest.h>

#include <cmath>
#include <random>

#include "olgdebt/calibration_io.hpp"
#include "olgdebt/model_core.hpp"

using namespace olgdebt;

namespace {

Calibration loglog() { return Calibration::baseline(PreferenceKind::LogLog); }
Calibration ghh() { return Calibration::baseline(PreferenceKind::GHH); }

// Random calibration inside the feasible region, with eta pinned.
Calibration random_calibration(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Calibration c;
  c.pref = u(rng) < 0.5 ? PreferenceKind::LogLog : PreferenceKind::GHH;
  c.beta = 0.95 + 0.049 * u(rng);
  c.q = 0.9 + 0.0999 * u(rng);
  c.theta = 2.0 + 10.0 * u(rng);
  c.epsilon = 1.5 + 3.0 * u(rng);
  c.alpha = 0.9 * u(rng);
  c.sigma = 0.5 + 0.5 * u(rng);
  c.phi_pi = 1.1 + 2.0 * u(rng);
  c.phi_y = 0.5 * u(rng);
  c.debt_to_gdp = 6.0 * u(rng);
  c.target_hours = 0.1 + 0.6 * u(rng);
  return c.with_pinned_eta();
}

}  // namespace

TEST_SUITE("model_core") {

TEST_CASE("zero debt gives the representative-agent rate") {
  auto c = loglog();
  c.debt_to_gdp = 0.0;
  CHECK(steady_state_rate(c) == doctest::Approx(1.0 / 0.998 - 1.0).epsilon(1e-14));
  CHECK(steady_state_rate(c) == doctest::Approx(0.0020040).epsilon(1e-4));
}

TEST_CASE("q = 1 removes the debt effect") {
  for (auto pref : {PreferenceKind::LogLog, PreferenceKind::GHH}) {
    auto c = Calibration::baseline(pref);
    c.q = 1.0;
    for (double by : {0.0, 2.4, 8.0}) {
      c.debt_to_gdp = by;
      CHECK(steady_state_rate(c) == doctest::Approx(1.0 / c.beta - 1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("baseline anchors at 60 and 200 percent") {
  auto c = loglog();
  CHECK(std::abs(annualize(steady_state_rate(c)) - 0.0162) < 0.0005);
  c.debt_to_gdp = 8.0;
  CHECK(std::abs(annualize(steady_state_rate(c)) - 0.0365) < 0.0005);
}

TEST_CASE("GHH baseline rate lies in the expected band") {
  const double r = annualize(steady_state_rate(ghh()));
  CHECK(r >= 0.015);
  CHECK(r <= 0.018);
}

TEST_CASE("infeasible debt is rejected") {
  auto c = loglog();
  c.debt_to_gdp = 1e4;
  CHECK_THROWS_AS(steady_state_rate(c), Error);
  try {
    steady_state_rate(c);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveDenominator);
  }
}

TEST_CASE("pin_eta examples") {
  auto c = loglog();
  CHECK(pin_eta(c) == doctest::Approx(5.0 / 6.0 * 0.7 / 0.3).epsilon(1e-14));
  CHECK(pin_eta(ghh()) == doctest::Approx(5.0 / 6.0 / 0.3).epsilon(1e-14));
  c.target_hours = 0.5;
  CHECK(pin_eta(c) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("baseline steady state levels") {
  const SteadyState ss = solve_steady_state(loglog());
  CHECK(ss.Y == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(ss.C == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(ss.L == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(ss.w == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(ss.T == doctest::Approx(ss.B_prime * ss.r_bar / (1.0 + ss.r_bar)).epsilon(1e-14));
  CHECK(ss.T > 0.0);
  CHECK(steady_state_residuals(loglog(), ss).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("q = 1 steady state has zero Euler residual") {
  auto c = loglog();
  c.q = 1.0;
  const SteadyState ss = solve_steady_state(c);
  CHECK(steady_state_residuals(c, ss).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ss.r_bar == doctest::Approx(1.0 / c.beta - 1.0).epsilon(1e-14));
}

TEST_CASE("rate rises with debt and falls with q") {
  for (auto pref : {PreferenceKind::LogLog, PreferenceKind::GHH}) {
    auto c = Calibration::baseline(pref);
    double prev = -1.0;
    for (int k = 0; k <= 80; ++k) {
      c.debt_to_gdp = 0.1 * k;
      const double r = steady_state_rate(c);
      CHECK(r > prev);
      prev = r;
    }
    c = Calibration::baseline(pref);
    prev = 1.0;
    for (int k = 0; k <= 40; ++k) {
      c.q = 0.95 + 0.00125 * k;
      const double r = steady_state_rate(c);
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("rate bounded below by the representative-agent rate") {
  auto c = loglog();
  for (double by : {0.5, 2.4, 8.0}) {
    c.debt_to_gdp = by;
    CHECK(steady_state_rate(c) > 1.0 / c.beta - 1.0);
  }
}

TEST_CASE("q -> 1 limit") {
  for (auto pref : {PreferenceKind::LogLog, PreferenceKind::GHH}) {
    auto c = Calibration::baseline(pref);
    c.q = 1.0 - 1e-8;
    CHECK(std::abs(steady_state_rate(c) - (1.0 / c.beta - 1.0)) < 1e-9);
  }
}

TEST_CASE("identity audit over random calibrations") {
  std::mt19937_64 rng(20240611);
  int audited = 0;
  double worst = 0.0;
  while (audited < 1000) {
    const Calibration c = random_calibration(rng);
    SteadyState ss;
    try {
      ss = solve_steady_state(c);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NonpositiveDenominator);
      continue;
    }
    worst = std::max(worst, steady_state_residuals(c, ss).cwiseAbs().maxCoeff());
    ++audited;
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("validation") {
  auto c = loglog();
  c.beta = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = loglog();
  c.theta = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = loglog();
  c.target_hours = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK_NOTHROW(loglog().validate());
  CHECK_THROWS_AS(parse_preference("crra"), Error);
  CHECK(parse_preference("GHH") == PreferenceKind::GHH);
}

TEST_CASE("calibration JSON round trip") {
  auto c = ghh();
  c.q = 0.97;
  c.eta = 2.5;
  const Calibration back = calibration_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(back.q == c.q);
  CHECK(back.pref == PreferenceKind::GHH);
  REQUIRE(back.eta.has_value());
  CHECK(*back.eta == 2.5);
  CHECK_FALSE(calibration_from_json(nlohmann::json::parse(R"({"eta": null})")).eta.has_value());
  CHECK_THROWS_AS(calibration_from_json(nlohmann::json::parse(R"({"gamma": 1})")), Error);
  CHECK_THROWS_AS(calibration_from_json(nlohmann::json::parse(R"({"q": "x"})")), Error);
}

}  // TEST_SUITE

#include "olgdebt/calibration_io.hpp"

#include <fstream>

#include "olgdebt/format.hpp"

namespace olgdebt {

namespace {

double number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number())
    throw Error(ErrorKind::InvalidConfig, "calibration key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

Calibration calibration_from_json(const nlohmann::json& j, Calibration c) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "calibration must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "beta") c.beta = number(v, key);
    else if (key == "q") c.q = number(v, key);
    else if (key == "theta") c.theta = number(v, key);
    else if (key == "epsilon") c.epsilon = number(v, key);
    else if (key == "alpha") c.alpha = number(v, key);
    else if (key == "sigma") c.sigma = number(v, key);
    else if (key == "phi_pi") c.phi_pi = number(v, key);
    else if (key == "phi_y") c.phi_y = number(v, key);
    else if (key == "debt_to_gdp") c.debt_to_gdp = number(v, key);
    else if (key == "L_bar") c.target_hours = number(v, key);
    else if (key == "eta") {
      if (v.is_null()) c.eta.reset();
      else c.eta = number(v, key);
    } else if (key == "pref") {
      if (!v.is_string()) throw Error(ErrorKind::InvalidConfig, "calibration key 'pref' must be a string");
      c.pref = parse_preference(v.get<std::string>());
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown calibration key '" + key + "'");
    }
  }
  return c;
}

nlohmann::ordered_json to_json(const Calibration& c) {
  nlohmann::ordered_json j;
  j["beta"] = c.beta;
  j["q"] = c.q;
  j["theta"] = c.theta;
  j["epsilon"] = c.epsilon;
  j["alpha"] = c.alpha;
  j["sigma"] = c.sigma;
  j["phi_pi"] = c.phi_pi;
  j["phi_y"] = c.phi_y;
  j["debt_to_gdp"] = c.debt_to_gdp;
  if (c.eta) j["eta"] = *c.eta;
  else j["eta"] = nullptr;
  j["L_bar"] = c.target_hours;
  j["pref"] = std::string(to_string(c.pref));
  return j;
}

nlohmann::ordered_json to_json(const SteadyState& ss) {
  nlohmann::ordered_json j;
  j["r_bar"] = ss.r_bar;
  j["r_bar_annualized"] = annualize(ss.r_bar);
  j["Y"] = ss.Y;
  j["L"] = ss.L;
  j["C"] = ss.C;
  j["w"] = ss.w;
  j["T"] = ss.T;
  j["B_prime"] = ss.B_prime;
  j["V"] = ss.V;
  j["delta"] = ss.delta;
  j["G"] = ss.G;
  j["pi"] = ss.pi;
  j["i"] = ss.i;
  j["debt_to_gdp"] = ss.debt_to_gdp;
  return j;
}

Calibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
  return calibration_from_json(j);
}

void save_calibration(const Calibration& calib, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << dump_json(to_json(calib)) << '\n';
}

}  // namespace olgdebt

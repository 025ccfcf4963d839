#include <ostream>

#include "olgdebt/format.hpp"
#include "olgdebt/perfect_foresight.hpp"

namespace olgdebt {

void write_path_csv(std::ostream& out, const SimulationPath& p) {
  out << "t,Y,C,L,pi_annualized,i_annualized,r_annualized,B_prime,taxes,"
         "debt_to_gdp_annualized,zlb_flag\n";
  for (int t = 0; t < p.horizon(); ++t) {
    const double debt_ratio = p.B_prime(t) / (1.0 + p.r(t)) / p.Y(t) / 4.0;
    out << t + 1 << ',' << format_number(p.Y(t)) << ',' << format_number(p.C(t)) << ','
        << format_number(p.L(t)) << ',' << format_number(annualize(p.pi(t) - 1.0)) << ','
        << format_number(annualize(p.i(t))) << ',' << format_number(annualize(p.r(t))) << ','
        << format_number(p.B_prime(t)) << ',' << format_number(p.taxes(t)) << ','
        << format_number(debt_ratio) << ',' << (p.zlb[t] ? 1 : 0) << '\n';
  }
}

nlohmann::ordered_json to_json(const MultiplierReport& r) {
  nlohmann::ordered_json j;
  j["impact"] = r.impact;
  j["present_value"] = r.present_value;
  j["k"] = r.k;
  j["regime_label"] = r.regime_label;
  j["baseline_zlb_periods"] = r.baseline_zlb_periods;
  j["treatment_zlb_periods"] = r.treatment_zlb_periods;
  j["output_gain"] = r.output_gain;
  j["debt_change"] = r.debt_change;
  j["max_residual"] = r.max_residual;
  return j;
}

}  // namespace olgdebt

#pragma once

#include <filesystem>

#include <json.hpp>

#include "olgdebt/model_core.hpp"

namespace olgdebt {

/// Flat object with the Calibration field names; `L_bar` holds the hours
/// target and `eta` may be null (pinned). Unknown keys throw InvalidConfig.
Calibration calibration_from_json(const nlohmann::json& j, Calibration base = {});
nlohmann::ordered_json to_json(const Calibration& calib);
nlohmann::ordered_json to_json(const SteadyState& ss);

Calibration load_calibration(const std::filesystem::path& path);
void save_calibration(const Calibration& calib, const std::filesystem::path& path);

}  // namespace olgdebt

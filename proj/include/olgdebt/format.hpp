#pragma once

#include <string>

#include <json.hpp>

namespace olgdebt {

/// Fixed 10-significant-digit rendering used by every CSV and JSON writer.
std::string format_number(double x);

/// JSON text with floats at 10 significant digits (non-finite as null), so
/// repeated runs give byte-identical files.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace olgdebt

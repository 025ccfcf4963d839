#include "olgdebt/format.hpp"

#include <cmath>
#include <cstdio>

namespace olgdebt {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

void dump(const nlohmann::ordered_json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + nlohmann::ordered_json(key).dump() + (indent > 0 ? ": " : ":");
        dump(value, indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump(j[k], indent, depth + 1, out);
      }
      out += nl + close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

}  // namespace olgdebt

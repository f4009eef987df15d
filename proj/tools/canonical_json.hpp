#pragma once

// Canonical report serialization: keys in insertion order, floating-point
// numbers as 17 significant digits in scientific notation, no whitespace
// variation. Output reparses (with any JSON reader) to an equal structure.

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace quadmod::cli {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline void write_canonical(const Json& j, std::string& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write_canonical(it.value(), out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ", ";
        first = false;
        write_canonical(v, out, indent + 2);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

inline std::string to_canonical(const Json& j) {
  std::string out;
  write_canonical(j, out);
  out += "\n";
  return out;
}

}  // namespace quadmod::cli

#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace fracstab::cli {
namespace {

void write_json(const Report& r, std::ostream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (r.is_object()) {
    if (r.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [key, value] : r.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Report(key).dump() << ": ";
      write_json(value, os, depth + 1);
    }
    os << '\n' << close << '}';
  } else if (r.is_array()) {
    if (r.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) os << ",\n";
      os << pad;
      write_json(r[i], os, depth + 1);
    }
    os << '\n' << close << ']';
  } else if (r.is_number_float()) {
    os << format_number(r.get<double>());
  } else {
    os << r.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv(const Report& r, const std::string& prefix, std::ostream& os) {
  if (r.is_object() || r.is_array()) {
    std::size_t i = 0;
    for (const auto& [key, value] : r.items()) {
      const std::string k = r.is_array() ? std::to_string(i++) : key;
      write_csv(value, prefix.empty() ? k : prefix + "." + k, os);
    }
    return;
  }
  os << csv_field(prefix) << ',';
  if (r.is_string()) {
    os << csv_field(r.get<std::string>());
  } else if (r.is_number_float()) {
    os << format_number(r.get<double>());
  } else {
    os << r.dump();
  }
  os << '\n';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Report number_value(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

void write_report(const Report& r, Format f, std::ostream& os) {
  if (f == Format::json) {
    write_json(r, os, 0);
    os << '\n';
  } else {
    os << "key,value\n";
    write_csv(r, "", os);
  }
}

}  // namespace fracstab::cli

#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace fracstab::cli {

using Report = nlohmann::ordered_json;

enum class Format { json, csv };

/// Fixed-precision rendering: ten significant digits, "inf", "-inf", "nan".
[[nodiscard]] std::string format_number(double v);

/// JSON value for v; non-finite values become strings.
[[nodiscard]] Report number_value(double v);

/// Writes the report as indented JSON or as flattened key,value CSV rows.
void write_report(const Report& r, Format f, std::ostream& os);

}  // namespace fracstab::cli

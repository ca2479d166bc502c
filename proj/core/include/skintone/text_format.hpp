#pragma once

#include <optional>
#include <string>

namespace skintone {

// Locale-independent number formatting used by every report writer.
std::string format_fixed(double value, int precision);
std::string format_fixed(const std::optional<double>& value, int precision);  // empty when absent
std::string format_general(double value, int precision);
std::string format_roundtrip(double value);  // shortest text that parses back bit-exactly

}  // namespace skintone

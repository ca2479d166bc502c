#include "skintone/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace skintone {

namespace {

template <typename... Args>
std::string to_chars_string(double value, Args... args) {
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, args...);
  if (ec != std::errc{}) throw std::runtime_error("number formatting overflow");
  return std::string(buf.data(), end);
}

}  // namespace

std::string format_fixed(double value, int precision) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  std::string s = to_chars_string(value, std::chars_format::fixed, precision);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_fixed(const std::optional<double>& value, int precision) {
  return value ? format_fixed(*value, precision) : std::string{};
}

std::string format_general(double value, int precision) {
  return to_chars_string(value, std::chars_format::general, precision);
}

std::string format_roundtrip(double value) { return to_chars_string(value); }

}  // namespace skintone

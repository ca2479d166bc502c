#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace skintone::utf8 {

inline constexpr char32_t kReplacement = U'\uFFFD';

struct DecodedCodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first code unit
  std::size_t length;  // number of code units
};

// Invalid or truncated sequences decode to U+FFFD, one per offending byte,
// so decoding never fails.
std::vector<DecodedCodePoint> decode(std::string_view text);

std::u32string to_u32(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Simple case folding for Latin, Greek and Cyrillic blocks. Code points
// outside those blocks pass through unchanged.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

bool is_whitespace(char32_t cp);

}  // namespace skintone::utf8

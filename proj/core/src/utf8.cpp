#include "skintone/utf8.hpp"

namespace skintone::utf8 {

namespace {

bool is_continuation(unsigned char byte) { return (byte & 0xC0U) == 0x80U; }

}  // namespace

std::vector<DecodedCodePoint> decode(std::string_view text) {
  std::vector<DecodedCodePoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min_value = 0;
    if (lead < 0x80U) {
      out.push_back({lead, i, 1});
      ++i;
      continue;
    } else if ((lead & 0xE0U) == 0xC0U) {
      len = 2;
      cp = lead & 0x1FU;
      min_value = 0x80;
    } else if ((lead & 0xF0U) == 0xE0U) {
      len = 3;
      cp = lead & 0x0FU;
      min_value = 0x800;
    } else if ((lead & 0xF8U) == 0xF0U) {
      len = 4;
      cp = lead & 0x07U;
      min_value = 0x10000;
    }

    bool ok = len != 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto byte = static_cast<unsigned char>(text[i + k]);
      if (!is_continuation(byte)) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (byte & 0x3FU);
    }
    ok = ok && cp >= min_value && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    if (!ok) {
      out.push_back({kReplacement, i, 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  for (const auto& d : decode(text)) out.push_back(d.value);
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 4);
  for (char32_t cp : cps) append(out, cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  // Latin-1 supplement, except the multiplication sign.
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  // Latin Extended-A: alternating upper/lower pairs.
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return cp | 1U;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp & 1U) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  // Greek.
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E || cp == 0x38F) return cp + 0x3F;
  // Cyrillic.
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x460 && cp <= 0x4FF && cp != 0x482 && !(cp >= 0x483 && cp <= 0x489)) {
    if (cp >= 0x4C1 && cp <= 0x4CE) return (cp & 1U) ? cp + 1 : cp;
    if (cp == 0x4C0) return 0x4CF;
    return cp | 1U;
  }
  return cp;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const auto& d : decode(text)) {
    if (d.value == kReplacement && d.length == 1 && static_cast<unsigned char>(text[d.offset]) >= 0x80) {
      out.push_back(text[d.offset]);  // keep undecodable bytes verbatim
      continue;
    }
    append(out, to_lower(d.value));
  }
  return out;
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace skintone::utf8

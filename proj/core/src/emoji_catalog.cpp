#include "skintone/emoji_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "skintone/error.hpp"

namespace skintone {

namespace {

bool is_scalar(char32_t cp) { return cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

char32_t modifier_codepoint(SkinTone tone) {
  if (tone == SkinTone::Default) throw std::invalid_argument("default tone has no modifier code point");
  return kFirstToneModifier + static_cast<char32_t>(tone_value(tone) - 1);
}

std::string_view tone_name(SkinTone tone) {
  switch (tone) {
    case SkinTone::Default: return "default";
    case SkinTone::Light: return "light";
    case SkinTone::MediumLight: return "medium-light";
    case SkinTone::Medium: return "medium";
    case SkinTone::MediumDark: return "medium-dark";
    case SkinTone::Dark: return "dark";
  }
  return "unknown";
}

EmojiCatalog::EmojiCatalog(std::vector<CodeSequence> bases, std::string version)
    : version_(std::move(version)) {
  for (auto& seq : bases) {
    std::erase(seq, kVariationSelector16);
    if (seq.empty()) throw std::invalid_argument("catalog entry is empty");
    if (!std::all_of(seq.begin(), seq.end(), is_scalar))
      throw std::invalid_argument("catalog entry is not a Unicode scalar sequence");
    max_length_ = std::max(max_length_, seq.size());
    bases_.insert(std::move(seq));
  }
}

bool EmojiCatalog::is_modifier_base(std::u32string_view seq) const {
  if (seq.empty() || seq.size() > max_length_) return false;
  return bases_.contains(CodeSequence(seq));
}

std::vector<CodeSequence> EmojiCatalog::sorted_bases() const {
  std::vector<CodeSequence> out(bases_.begin(), bases_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CodeSequence> parse_hex_sequence(std::string_view text) {
  CodeSequence seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    auto end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto token = text.substr(pos, end - pos);
    if (token.size() > 6) return std::nullopt;
    if (!std::all_of(token.begin(), token.end(), [](char c) {
          return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F');
        }))
      return std::nullopt;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value, 16);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    if (!is_scalar(value)) return std::nullopt;
    seq.push_back(static_cast<char32_t>(value));
    pos = end;
  }
  if (seq.empty()) return std::nullopt;
  return seq;
}

std::string to_hex(std::u32string_view seq) {
  std::string out;
  for (char32_t cp : seq) {
    if (!out.empty()) out.push_back(' ');
    char buf[8];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<std::uint32_t>(cp), 16);
    for (char* p = buf; p != end; ++p) out.push_back(static_cast<char>(std::toupper(*p)));
  }
  return out;
}

EmojiCatalog parse_catalog(std::istream& in, const std::string& source_name) {
  std::vector<CodeSequence> bases;
  std::string version;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(view.substr(hash + 1));
      constexpr std::string_view kVersionKey = "version:";
      if (version.empty() && comment.starts_with(kVersionKey))
        version = std::string(trim(comment.substr(kVersionKey.size())));
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    auto seq = parse_hex_sequence(view);
    if (!seq) throw ParseError(source_name, line_no, "malformed hex code point in '" + std::string(view) + "'");
    bases.push_back(std::move(*seq));
  }
  if (in.bad()) throw IoError("read failure: " + source_name);
  if (bases.empty()) throw ParseError(source_name, line_no, "catalog contains no entries");
  if (version.empty()) version = source_name;
  return EmojiCatalog(std::move(bases), std::move(version));
}

EmojiCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open catalog file: " + path.string());
  return parse_catalog(in, path.string());
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("SKINTONE_DATA_DIR"); env != nullptr && *env != '\0') return env;
  const std::filesystem::path source_dir = SKINTONE_SOURCE_DATA_DIR;
  std::error_code ec;
  if (std::filesystem::exists(source_dir / "modifier_bases.txt", ec)) return source_dir;
  return SKINTONE_INSTALL_DATA_DIR;
}

std::filesystem::path default_catalog_path() { return default_data_dir() / "modifier_bases.txt"; }

}  // namespace skintone

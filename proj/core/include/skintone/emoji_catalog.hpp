#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace skintone {

using CodeSequence = std::u32string;

inline constexpr char32_t kVariationSelector16 = U'\uFE0F';
inline constexpr char32_t kZeroWidthJoiner = U'\u200D';

// Fitzpatrick-derived skin tones. Numeric values of the five modifiers are
// the 1..5 scale used for mean-tone statistics; Default means "no modifier".
enum class SkinTone : std::uint8_t {
  Default = 0,
  Light = 1,
  MediumLight = 2,
  Medium = 3,
  MediumDark = 4,
  Dark = 5,
};

inline constexpr std::array<SkinTone, 5> kModifierTones{
    SkinTone::Light, SkinTone::MediumLight, SkinTone::Medium, SkinTone::MediumDark,
    SkinTone::Dark};

inline constexpr char32_t kFirstToneModifier = U'\U0001F3FB';
inline constexpr char32_t kLastToneModifier = U'\U0001F3FF';

constexpr int tone_value(SkinTone tone) noexcept { return static_cast<int>(tone); }

constexpr bool is_tone_modifier(char32_t cp) noexcept {
  return cp >= kFirstToneModifier && cp <= kLastToneModifier;
}

// U+1F3FB..U+1F3FF map to Light..Dark; every other code point has no tone.
constexpr std::optional<SkinTone> tone_of(char32_t cp) noexcept {
  if (!is_tone_modifier(cp)) return std::nullopt;
  return static_cast<SkinTone>(cp - kFirstToneModifier + 1);
}

// Throws std::invalid_argument for SkinTone::Default.
char32_t modifier_codepoint(SkinTone tone);

std::string_view tone_name(SkinTone tone);

// The set of emoji that accept a skin-tone modifier. Immutable once built.
class EmojiCatalog {
 public:
  EmojiCatalog() = default;

  // Strips U+FE0F from each entry and removes duplicates. Throws
  // std::invalid_argument on an empty sequence or a non-scalar code point.
  explicit EmojiCatalog(std::vector<CodeSequence> bases, std::string version = {});

  bool is_modifier_base(std::u32string_view seq) const;

  std::size_t size() const noexcept { return bases_.size(); }
  bool empty() const noexcept { return bases_.empty(); }
  std::size_t max_sequence_length() const noexcept { return max_length_; }
  const std::string& version() const noexcept { return version_; }

  // Entries in ascending code-point order.
  std::vector<CodeSequence> sorted_bases() const;

  friend bool operator==(const EmojiCatalog& a, const EmojiCatalog& b) {
    return a.version_ == b.version_ && a.bases_ == b.bases_;
  }

 private:
  std::unordered_set<CodeSequence> bases_;
  std::size_t max_length_ = 0;
  std::string version_;
};

// Parses the catalog text format: one entry per line, uppercase hex code
// points separated by spaces, `#` comments, blank lines ignored. A comment
// of the form `# version: <text>` sets the catalog version.
EmojiCatalog parse_catalog(std::istream& in, const std::string& source_name);
EmojiCatalog load_catalog(const std::filesystem::path& path);

// Location of the bundled 102-entry catalog and lexicon.
std::filesystem::path default_data_dir();
std::filesystem::path default_catalog_path();

// Parses a space-separated list of uppercase hex code points ("1F44D 1F3FF").
// Returns nullopt on any malformed token.
std::optional<CodeSequence> parse_hex_sequence(std::string_view text);
std::string to_hex(std::u32string_view seq);

}  // namespace skintone

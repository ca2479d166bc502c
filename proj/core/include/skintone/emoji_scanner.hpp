#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/emoji_catalog.hpp"

namespace skintone {

// One emoji occurrence. A tone modifier with no eligible base becomes an
// orphan token whose base is the modifier itself.
struct EmojiToken {
  CodeSequence base;
  SkinTone tone = SkinTone::Default;
  std::size_t byte_offset = 0;
  bool orphan = false;

  bool toned() const noexcept { return tone != SkinTone::Default; }

  // UTF-8 rendering: base followed by its modifier when toned. Orphans
  // render as the bare modifier.
  std::string text() const;

  friend bool operator==(const EmojiToken&, const EmojiToken&) = default;
};

// Approximates Extended_Pictographic plus the regional indicators. Tone
// modifiers are excluded; the scanner handles them separately.
bool is_pictographic(char32_t cp);
constexpr bool is_regional_indicator(char32_t cp) noexcept { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

// Single left-to-right pass over `text`. A modifier base followed by a tone
// modifier (an intervening U+FE0F is skipped) fuses into one token; other
// pictographic code points become untoned tokens; pairs of regional
// indicators form one flag token; everything else is skipped.
std::vector<EmojiToken> scan_emoji(const EmojiCatalog& catalog, std::string_view text);

// Lowercased word/emoji token stream with @mentions, #hashtags and URLs
// removed. Each word token is a whitespace-delimited run with leading and
// trailing ASCII punctuation stripped; each emoji is its own token.
using CleanToken = std::string;

struct TokenizeOptions {
  // Emit a toned emoji as two tokens (base, then modifier) so that the
  // modifiers get their own vocabulary entries. When false the toned emoji
  // stays one token.
  bool split_tone_modifiers = true;
};

std::vector<CleanToken> clean_and_tokenize(const EmojiCatalog& catalog, std::string_view text,
                                           const TokenizeOptions& options = {});

}  // namespace skintone

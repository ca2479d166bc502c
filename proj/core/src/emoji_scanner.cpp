#include "skintone/emoji_scanner.hpp"

#include <algorithm>
#include <optional>

#include "skintone/utf8.hpp"

namespace skintone {

namespace {

struct Span {
  EmojiToken token;
  std::size_t end_offset;  // one past the last byte, trailing U+FE0F included
};

using CodePoints = std::vector<utf8::DecodedCodePoint>;

struct BaseMatch {
  CodeSequence seq;
  std::size_t next;  // index after the last matched code point
};

// Longest catalog entry starting at `i`, skipping U+FE0F between members.
std::optional<BaseMatch> match_base(const EmojiCatalog& catalog, const CodePoints& cps, std::size_t i) {
  if (catalog.empty() || cps[i].value == kVariationSelector16) return std::nullopt;
  for (std::size_t want = catalog.max_sequence_length(); want >= 1; --want) {
    CodeSequence seq;
    std::size_t j = i;
    while (j < cps.size() && seq.size() < want) {
      if (cps[j].value != kVariationSelector16 || seq.empty()) seq.push_back(cps[j].value);
      ++j;
    }
    if (seq.size() == want && catalog.is_modifier_base(seq)) return BaseMatch{std::move(seq), j};
  }
  return std::nullopt;
}

std::size_t end_of(const CodePoints& cps, std::size_t index_after, std::size_t text_size) {
  return index_after < cps.size() ? cps[index_after].offset : text_size;
}

std::vector<Span> scan_spans(const EmojiCatalog& catalog, std::string_view text) {
  const CodePoints cps = utf8::decode(text);
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t cp = cps[i].value;
    const std::size_t offset = cps[i].offset;

    if (auto tone = tone_of(cp)) {
      spans.push_back({{CodeSequence(1, cp), *tone, offset, true}, cps[i].offset + cps[i].length});
      ++i;
      continue;
    }

    if (auto base = match_base(catalog, cps, i)) {
      std::size_t k = base->next;
      if (k < cps.size() && cps[k].value == kVariationSelector16) ++k;
      if (k < cps.size()) {
        if (auto tone = tone_of(cps[k].value)) {
          spans.push_back({{std::move(base->seq), *tone, offset, false}, end_of(cps, k + 1, text.size())});
          i = k + 1;
          continue;
        }
      }
      spans.push_back({{std::move(base->seq), SkinTone::Default, offset, false}, end_of(cps, k, text.size())});
      i = base->next;
      continue;
    }

    if (is_regional_indicator(cp)) {
      std::size_t next = i + 1;
      CodeSequence seq(1, cp);
      if (next < cps.size() && is_regional_indicator(cps[next].value)) seq.push_back(cps[next++].value);
      spans.push_back({{std::move(seq), SkinTone::Default, offset, false}, end_of(cps, next, text.size())});
      i = next;
      continue;
    }

    if (is_pictographic(cp)) {
      std::size_t next = i + 1;
      if (next < cps.size() && cps[next].value == kVariationSelector16) ++next;
      spans.push_back({{CodeSequence(1, cp), SkinTone::Default, offset, false}, end_of(cps, next, text.size())});
      i = i + 1;
      continue;
    }
    ++i;
  }
  return spans;
}

constexpr bool is_ascii_punct(char c) noexcept {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

std::size_t find_url_start(std::string_view chunk) {
  std::string lowered(chunk);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; });
  const auto http = lowered.find("http://");
  const auto https = lowered.find("https://");
  return std::min(http, https);
}

void emit_word(std::string_view piece, std::vector<CleanToken>& out) {
  std::string word;
  for (const auto& d : utf8::decode(piece)) {
    if (d.value == kVariationSelector16 || d.value == kZeroWidthJoiner || d.value == U'\uFE0E') continue;
    word.append(piece.substr(d.offset, d.length));
  }
  if (word.find_first_of("@#") != std::string::npos) return;
  std::size_t first = 0;
  std::size_t last = word.size();
  while (first < last && is_ascii_punct(word[first])) ++first;
  while (last > first && is_ascii_punct(word[last - 1])) --last;
  if (first == last) return;
  std::string token = utf8::to_lower(std::string_view(word).substr(first, last - first));
  if (token.find("://") != std::string::npos) return;
  out.push_back(std::move(token));
}

void emit_emoji(const EmojiToken& token, const TokenizeOptions& options, std::vector<CleanToken>& out) {
  if (token.toned() && !token.orphan && options.split_tone_modifiers) {
    out.push_back(utf8::encode(token.base));
    std::string modifier;
    utf8::append(modifier, modifier_codepoint(token.tone));
    out.push_back(std::move(modifier));
    return;
  }
  out.push_back(token.text());
}

}  // namespace

std::string EmojiToken::text() const {
  std::string out = utf8::encode(base);
  if (toned() && !orphan) utf8::append(out, modifier_codepoint(tone));
  return out;
}

bool is_pictographic(char32_t cp) {
  if (cp < 0xA9) return false;
  if (cp >= 0x1F000) {
    if (is_tone_modifier(cp) || is_regional_indicator(cp)) return false;
    return cp <= 0x1FAFF || (cp >= 0x1FC00 && cp <= 0x1FFFD);
  }
  switch (cp) {
    case 0xA9: case 0xAE: case 0x203C: case 0x2049: case 0x2122: case 0x2139:
    case 0x2328: case 0x2388: case 0x23CF: case 0x24C2: case 0x25B6: case 0x25C0:
    case 0x2B50: case 0x2B55: case 0x3030: case 0x303D: case 0x3297: case 0x3299:
      return true;
    default:
      break;
  }
  return (cp >= 0x2194 && cp <= 0x2199) || (cp >= 0x21A9 && cp <= 0x21AA) ||
         (cp >= 0x231A && cp <= 0x231B) || (cp >= 0x23E9 && cp <= 0x23F3) ||
         (cp >= 0x23F8 && cp <= 0x23FA) || (cp >= 0x25AA && cp <= 0x25AB) ||
         (cp >= 0x25FB && cp <= 0x25FE) || (cp >= 0x2600 && cp <= 0x27BF) ||
         (cp >= 0x2934 && cp <= 0x2935) || (cp >= 0x2B05 && cp <= 0x2B07) ||
         (cp >= 0x2B1B && cp <= 0x2B1C);
}

std::vector<EmojiToken> scan_emoji(const EmojiCatalog& catalog, std::string_view text) {
  std::vector<EmojiToken> tokens;
  for (auto& span : scan_spans(catalog, text)) tokens.push_back(std::move(span.token));
  return tokens;
}

std::vector<CleanToken> clean_and_tokenize(const EmojiCatalog& catalog, std::string_view text,
                                           const TokenizeOptions& options) {
  std::vector<CleanToken> out;
  const auto cps = utf8::decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (utf8::is_whitespace(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !utf8::is_whitespace(cps[j].value)) ++j;
    const std::size_t begin = cps[i].offset;
    const std::size_t end = j < cps.size() ? cps[j].offset : text.size();
    i = j;

    std::string_view chunk = text.substr(begin, end - begin);
    if (const auto url = find_url_start(chunk); url != std::string_view::npos) chunk = chunk.substr(0, url);

    std::size_t cursor = 0;
    for (const auto& span : scan_spans(catalog, chunk)) {
      if (span.token.byte_offset > cursor) emit_word(chunk.substr(cursor, span.token.byte_offset - cursor), out);
      emit_emoji(span.token, options, out);
      cursor = span.end_offset;
    }
    if (cursor < chunk.size()) emit_word(chunk.substr(cursor), out);
  }
  return out;
}

}  // namespace skintone

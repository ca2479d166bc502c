#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "skintone/emoji_scanner.hpp"
#include "skintone/utf8.hpp"

using namespace skintone;

namespace {

const EmojiCatalog& catalog() {
  static const EmojiCatalog c = load_catalog(default_catalog_path());
  return c;
}

const std::vector<char32_t> kBases{0x1F44D, 0x1F44B, 0x1F64C, 0x1F4AA, 0x1F476};

std::u32string random_string(std::mt19937_64& rng, std::size_t max_len) {
  static const std::u32string letters = U"abZé ";
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> cls(0, 3);
  std::u32string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    switch (cls(rng)) {
      case 0: s.push_back(letters[rng() % letters.size()]); break;
      case 1: s.push_back(kBases[rng() % kBases.size()]); break;
      case 2: s.push_back(static_cast<char32_t>(0x1F3FB + rng() % 5)); break;
      default: s.push_back(0xFE0F); break;
    }
  }
  return s;
}

std::vector<oracle::RefToken> as_ref(const std::vector<EmojiToken>& tokens) {
  std::vector<oracle::RefToken> out;
  for (const auto& t : tokens) {
    EXPECT_EQ(t.base.size(), 1u);
    out.push_back({t.base.empty() ? 0 : t.base[0], tone_value(t.tone), t.byte_offset, t.orphan});
  }
  return out;
}

}  // namespace

TEST(ScanEmoji, TonedBaseFusesIntoOneToken) {
  const auto tokens = scan_emoji(catalog(), "👍🏿");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].base, CodeSequence(U"\U0001F44D"));
  EXPECT_EQ(tokens[0].tone, SkinTone::Dark);
  EXPECT_FALSE(tokens[0].orphan);
  EXPECT_EQ(tokens[0].text(), "👍🏿");
}

TEST(ScanEmoji, PlainTextHasNoTokens) { EXPECT_TRUE(scan_emoji(catalog(), "hello world").empty()); }

TEST(ScanEmoji, ModifierWithoutBaseIsOrphan) {
  const auto tokens = scan_emoji(catalog(), "A🏻");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_TRUE(tokens[0].orphan);
  EXPECT_EQ(tokens[0].base, CodeSequence(U"\U0001F3FB"));
  EXPECT_EQ(tokens[0].tone, SkinTone::Light);
  EXPECT_EQ(tokens[0].byte_offset, 1u);
  EXPECT_EQ(tokens[0].text(), "🏻");
}

TEST(ScanEmoji, GreedyLeftToRightPairing) {
  const auto tokens = scan_emoji(catalog(), "👍👍🏿");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].tone, SkinTone::Default);
  EXPECT_EQ(tokens[1].tone, SkinTone::Dark);
  EXPECT_EQ(tokens[1].byte_offset, 4u);
}

TEST(ScanEmoji, VariationSelectorBetweenBaseAndModifierIsSkipped) {
  const auto tokens = scan_emoji(catalog(), "☝️🏽");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].base, CodeSequence(U"☝"));
  EXPECT_EQ(tokens[0].tone, SkinTone::Medium);
}

TEST(ScanEmoji, ModifierAfterNonBaseEmojiIsOrphan) {
  const auto tokens = scan_emoji(catalog(), "😀🏿");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].tone, SkinTone::Default);
  EXPECT_FALSE(tokens[0].orphan);
  EXPECT_TRUE(tokens[1].orphan);
}

TEST(ScanEmoji, NonBaseEmojiAreReportedUntoned) {
  const auto tokens = scan_emoji(catalog(), "wine 🍷 and ❤️");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].base, CodeSequence(U"\U0001F377"));
  EXPECT_EQ(tokens[1].base, CodeSequence(U"❤"));
}

TEST(ScanEmoji, RegionalIndicatorPairsFormFlags) {
  const auto tokens = scan_emoji(catalog(), "🇺🇸🇧");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].base, CodeSequence(U"\U0001F1FA\U0001F1F8"));
  EXPECT_EQ(tokens[1].base.size(), 1u);
}

TEST(ScanEmoji, MatchesReferenceScannerOnRandomStrings) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    const auto s = random_string(rng, 24);
    const auto tokens = scan_emoji(catalog(), utf8::encode(s));
    ASSERT_EQ(as_ref(tokens), oracle::reference_scan(s, kBases)) << "case " << i;
  }
}

TEST(ScanEmoji, OffsetsIncreaseAndTokensRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = utf8::encode(random_string(rng, 30));
    const auto tokens = scan_emoji(catalog(), text);
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (k > 0) {
        EXPECT_GT(tokens[k].byte_offset, tokens[k - 1].byte_offset);
      }
      const std::string base = utf8::encode(tokens[k].base);
      EXPECT_EQ(text.compare(tokens[k].byte_offset, base.size(), base), 0);
      const auto again = scan_emoji(catalog(), tokens[k].text());
      ASSERT_EQ(again.size(), 1u);
      EXPECT_EQ(again[0].base, tokens[k].base);
      EXPECT_EQ(again[0].tone, tokens[k].tone);
      EXPECT_EQ(again[0].orphan, tokens[k].orphan);
    }
  }
}

TEST(ScanEmoji, ConcatenationPreservesTokens) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto s1 = random_string(rng, 12);
    s1.push_back(U'x');  // must not end in a base or modifier
    const auto s2 = random_string(rng, 12);
    const std::string t1 = utf8::encode(s1);
    const std::string t2 = utf8::encode(s2);
    auto expected = scan_emoji(catalog(), t1);
    for (auto tok : scan_emoji(catalog(), t2)) {
      tok.byte_offset += t1.size();
      expected.push_back(tok);
    }
    EXPECT_EQ(scan_emoji(catalog(), t1 + t2), expected);
  }
}

TEST(CleanAndTokenize, RemovesMentionsAndUrls) {
  const std::vector<CleanToken> expected{"great", "read", "🙌"};
  EXPECT_EQ(clean_and_tokenize(catalog(), "Great read @tmase04 🙌 https://t.co/QRVkgZBArc"), expected);
}

TEST(CleanAndTokenize, KeepsAccentedWords) {
  const std::vector<CleanToken> expected{"ser", "rejeitado", "é", "horrível", "🙄"};
  EXPECT_EQ(clean_and_tokenize(catalog(), "Ser rejeitado é horrível 🙄"), expected);
}

TEST(CleanAndTokenize, EmptyInput) { EXPECT_TRUE(clean_and_tokenize(catalog(), "").empty()); }

TEST(CleanAndTokenize, DropsWholeHashtagAndStripsPunctuation) {
  const auto tokens = clean_and_tokenize(catalog(), "Tengo #nexflix no me interesa mas la vida! 🍷❤️");
  const std::vector<CleanToken> expected{"tengo", "no", "me", "interesa", "mas", "la", "vida", "🍷", "❤"};
  EXPECT_EQ(tokens, expected);
}

TEST(CleanAndTokenize, SplitsToneModifierIntoOwnToken) {
  const std::vector<CleanToken> split{"ok", "👍", "🏿"};
  EXPECT_EQ(clean_and_tokenize(catalog(), "OK👍🏿"), split);
  const std::vector<CleanToken> fused{"ok", "👍🏿"};
  EXPECT_EQ(clean_and_tokenize(catalog(), "OK👍🏿", TokenizeOptions{false}), fused);
}

TEST(CleanAndTokenize, NeverEmitsMentionHashtagOrUrl) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces{"@bob", "#tag", "http://x.y/z", "HTTPS://A.B", "word", "Hi!", "👍🏽",
                                        "a@b",  "x#y",  "(wow)",        "🙌🙌",        "ftp://q", "..."};
  for (int i = 0; i < 500; ++i) {
    std::string text;
    for (int k = 0; k < 8; ++k) text += pieces[rng() % pieces.size()] + (rng() % 3 ? " " : "");
    for (const auto& tok : clean_and_tokenize(catalog(), text)) {
      EXPECT_EQ(tok.find('@'), std::string::npos) << text;
      EXPECT_EQ(tok.find('#'), std::string::npos) << text;
      EXPECT_EQ(tok.find("://"), std::string::npos) << text;
      EXPECT_FALSE(tok.empty());
    }
  }
}

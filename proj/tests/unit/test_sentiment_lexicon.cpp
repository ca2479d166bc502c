#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "skintone/emoji_scanner.hpp"
#include "skintone/error.hpp"
#include "skintone/sentiment_lexicon.hpp"

using namespace skintone;

namespace {

SentimentLexicon parse(const std::string& text, std::uint64_t min = kDefaultMinOccurrences) {
  std::istringstream in(text);
  return parse_lexicon(in, "test", min);
}

const EmojiCatalog& catalog() {
  static const EmojiCatalog c = load_catalog(default_catalog_path());
  return c;
}

}  // namespace

TEST(EmojiScore, Formula) {
  EXPECT_DOUBLE_EQ(emoji_score({U"x", 30, 30, 40}), 0.10);
  EXPECT_EQ(emoji_score({U"x", 0, 0, 17}), 1.0);
  EXPECT_EQ(emoji_score({U"x", 17, 0, 0}), -1.0);
  EXPECT_THROW(emoji_score({U"x", 0, 0, 0}), std::domain_error);
}

TEST(EmojiScore, ScaleInvariant) {
  for (std::uint64_t k : {2, 3, 7, 1000}) {
    EXPECT_DOUBLE_EQ(emoji_score({U"x", 13 * k, 5 * k, 29 * k}), emoji_score({U"x", 13, 5, 29}));
  }
}

TEST(ParseLexicon, ThresholdKeepsAndDrops) {
  const auto lex = parse("emoji_hex,n_neg,n_neut,n_pos\n1F600,10,20,70\n1F9D0,5,5,5\n");
  EXPECT_EQ(lex.size(), 1u);
  ASSERT_NE(lex.find(U"\U0001F600"), nullptr);
  EXPECT_EQ(lex.find(U"\U0001F600")->total(), 100u);
  EXPECT_EQ(lex.find(U"\U0001F9D0"), nullptr);
}

TEST(ParseLexicon, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("emoji_hex,n_neg,n_neut,n_pos\n1F600,1,2,3\n1F600,1,2,3\n"), 3u);
  EXPECT_EQ(line_of("emoji_hex,n_neg,n_neut,n_pos\n1F600,-1,2,3\n"), 2u);
  EXPECT_EQ(line_of("emoji_hex,n_neg,n_neut,n_pos\n1F600,1,2\n"), 2u);
  EXPECT_EQ(line_of("emoji_hex,n_neg,n_neut,n_pos\nZZZ,1,2,3\n"), 2u);
  EXPECT_EQ(line_of("emoji,neg,neut,pos\n"), 1u);
}

TEST(ParseLexicon, ToleratesBomAndCrlf) {
  const auto lex = parse("\xEF\xBB\xBF" "emoji_hex,n_neg,n_neut,n_pos\r\n1F600,10,20,70\r\n");
  EXPECT_EQ(lex.size(), 1u);
}

TEST(BundledLexicon, MatchesRecountOfPublishedData) {
  const auto published = oracle::published_lexicon(std::string(SKINTONE_TEST_DATA_DIR) + "/Emoji_Sentiment_Data_v1.0.csv", 50);
  const auto lex = load_lexicon(default_lexicon_path(), 50);
  EXPECT_EQ(published.size(), 300u);
  ASSERT_EQ(lex.size(), published.size());
  for (const auto& p : published) {
    const auto* e = lex.find(std::u32string(1, static_cast<char32_t>(p.codepoint)));
    ASSERT_NE(e, nullptr) << std::hex << p.codepoint;
    EXPECT_EQ(e->n_neg, static_cast<std::uint64_t>(p.negative));
    EXPECT_EQ(e->n_neut, static_cast<std::uint64_t>(p.neutral));
    EXPECT_EQ(e->n_pos, static_cast<std::uint64_t>(p.positive));
    EXPECT_EQ(e->total(), static_cast<std::uint64_t>(p.occurrences));
  }
  // Lower threshold keeps every published row.
  EXPECT_EQ(load_lexicon(default_lexicon_path(), 1).size(),
            oracle::published_lexicon(std::string(SKINTONE_TEST_DATA_DIR) + "/Emoji_Sentiment_Data_v1.0.csv", 1).size());
}

TEST(TweetSentiment, SingleEmojiValue) {
  // Fixture entry whose score is 0.522114 exactly.
  const SentimentLexicon lex({{U"\U0001F64C", 100000, 277886, 622114}}, 50);
  const auto tokens = scan_emoji(catalog(), "Great read @tmase04 🙌 https://t.co/QRVkgZBArc");
  EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, tokens), 0.522114);
}

TEST(TweetSentiment, SumAndMeanAggregation) {
  const SentimentLexicon lex({{U"\U0001F600", 10, 20, 70}, {U"\U0001F622", 60, 20, 20}}, 50);
  const auto two = scan_emoji(catalog(), "😀 😀");
  EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, two, Aggregation::Sum), 1.2);
  EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, two, Aggregation::Mean), 0.6);
  EXPECT_FALSE(tweet_sentiment(lex, scan_emoji(catalog(), "no emoji 🦄")).has_value());
  const auto mixed = scan_emoji(catalog(), "😀😢 🦄");
  EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, mixed, Aggregation::Sum), 0.2);
  EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, mixed, Aggregation::Mean), 0.1);
}

TEST(TweetSentiment, ToneNeverChangesTheScore) {
  const SentimentLexicon lex({{U"\U0001F44D", 10, 20, 70}, {U"\U0001F64C", 1, 2, 90}}, 50);
  const double plain = *tweet_sentiment(lex, scan_emoji(catalog(), "👍 🙌"));
  for (const char* toned : {"👍🏻 🙌", "👍🏿 🙌🏽", "👍🏼 🙌🏾", "👍️🏽 🙌"})
    EXPECT_DOUBLE_EQ(*tweet_sentiment(lex, scan_emoji(catalog(), toned)), plain) << toned;
}

TEST(TweetSentiment, BoundsForBundledLexicon) {
  const auto lex = load_lexicon(default_lexicon_path());
  const auto tokens = scan_emoji(catalog(), "😂😂❤️😭🙏👍🏾🔥💯😡💔");
  std::size_t k = 0;
  for (const auto& t : tokens) k += lex.score(t.base).has_value();
  const double sum = *tweet_sentiment(lex, tokens, Aggregation::Sum);
  const double mean = *tweet_sentiment(lex, tokens, Aggregation::Mean);
  EXPECT_LE(std::abs(sum), static_cast<double>(k));
  EXPECT_LE(std::abs(mean), 1.0);
  EXPECT_NEAR(sum / static_cast<double>(k), mean, 1e-12);
}

TEST(Aggregation, ParseNames) {
  EXPECT_EQ(parse_aggregation("sum"), Aggregation::Sum);
  EXPECT_EQ(parse_aggregation("mean"), Aggregation::Mean);
  EXPECT_FALSE(parse_aggregation("median").has_value());
}

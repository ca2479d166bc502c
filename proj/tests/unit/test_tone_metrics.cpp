#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "published_counts.hpp"
#include "skintone/emoji_scanner.hpp"
#include "skintone/tone_metrics.hpp"

using namespace skintone;

namespace {

const EmojiCatalog& catalog() {
  static const EmojiCatalog c = load_catalog(default_catalog_path());
  return c;
}

TweetRecord tweet(std::string text, std::string country = "US") {
  return {"id", std::move(text), "en", std::move(country), ""};
}

void add(CountryAggregate& agg, const std::string& text, std::optional<double> sentiment = std::nullopt) {
  const auto rec = tweet(text, agg.country);
  const auto emoji = scan_emoji(catalog(), rec.text);
  accumulate(agg, rec, emoji, catalog(), sentiment);
}

std::string random_tweet(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{"hi ", "👍", "👍🏿", "🙌🏻", "🏽", "😀", "💪🏾", "👶", " ", "x"};
  std::string s;
  const int n = static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
  return s;
}

CountryAggregate random_aggregate(std::mt19937_64& rng) {
  CountryAggregate agg("US");
  const int n = static_cast<int>(rng() % 20);
  for (int i = 0; i < n; ++i) {
    std::optional<double> s;
    if (rng() % 2) s = static_cast<double>(static_cast<int>(rng() % 2001) - 1000) / 997.0;
    add(agg, random_tweet(rng), s);
  }
  return agg;
}

ToneHistogram hist(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t e) {
  return {a, b, c, d, e};
}

}  // namespace

TEST(TweetMeanTone, Examples) {
  EXPECT_DOUBLE_EQ(*tweet_mean_tone(scan_emoji(catalog(), "👍🏻🙌🏼")), 1.5);
  EXPECT_DOUBLE_EQ(*tweet_mean_tone(scan_emoji(catalog(), "👍🏿")), 5.0);
  EXPECT_FALSE(tweet_mean_tone(scan_emoji(catalog(), "👍👍")).has_value());
  EXPECT_DOUBLE_EQ(*tweet_mean_tone(scan_emoji(catalog(), "x🏻 👍🏽")), 2.0);  // orphan counts
}

TEST(Accumulate, SingleTonedEmoji) {
  CountryAggregate agg("US");
  add(agg, "hi 👍🏿");
  EXPECT_EQ(agg.n_tweets, 1u);
  EXPECT_EQ(agg.n_tweets_with_potential, 1u);
  EXPECT_EQ(agg.n_tweets_with_tone, 1u);
  EXPECT_EQ(agg.n_potential_emoji, 1u);
  EXPECT_EQ(agg.n_toned_emoji, 1u);
  EXPECT_EQ(agg.tone_histogram[4], 1u);
  EXPECT_EQ(agg.tone_value_n, 1u);
  EXPECT_DOUBLE_EQ(agg.tone_value_sum.value(), 5.0);
}

TEST(Accumulate, UntonedAndEmpty) {
  CountryAggregate agg("US");
  add(agg, "👍");
  EXPECT_EQ(agg.n_potential_emoji, 1u);
  EXPECT_EQ(agg.n_toned_emoji, 0u);
  EXPECT_EQ(agg.n_tweets_with_tone, 0u);

  CountryAggregate plain("US");
  add(plain, "nothing to see");
  CountryAggregate expected("US");
  expected.n_tweets = 1;
  EXPECT_EQ(plain, expected);
}

TEST(Accumulate, OrphansEnterHistogramOnly) {
  CountryAggregate agg("US");
  add(agg, "x🏻 y🏻");
  EXPECT_EQ(agg.n_toned_emoji, 2u);
  EXPECT_EQ(agg.n_orphan_emoji, 2u);
  EXPECT_EQ(agg.n_potential_emoji, 0u);
  EXPECT_EQ(agg.n_tweets_with_tone, 0u);
  EXPECT_FALSE(tone_proportion(agg).has_value());
}

TEST(Accumulate, SentimentOnlyWhenPresent) {
  CountryAggregate agg("US");
  add(agg, "a", 0.5);
  add(agg, "b");
  EXPECT_EQ(agg.sentiment_n, 1u);
  EXPECT_DOUBLE_EQ(*mean_sentiment(agg), 0.5);
}

TEST(Accumulate, CountryMismatchThrows) {
  CountryAggregate agg("US");
  const auto rec = tweet("👍", "BR");
  EXPECT_THROW(accumulate(agg, rec, scan_emoji(catalog(), rec.text), catalog(), std::nullopt), std::invalid_argument);
  CountryAggregate unknown{std::string(kUnknownCountry)};
  const auto nowhere = tweet("👍", "");
  EXPECT_NO_THROW(accumulate(unknown, nowhere, scan_emoji(catalog(), nowhere.text), catalog(), std::nullopt));
}

TEST(Accumulate, InvariantsOnRandomTweets) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto agg = random_aggregate(rng);
    EXPECT_EQ(agg.n_toned_emoji, histogram_total(agg.tone_histogram));
    EXPECT_LE(agg.n_toned_emoji, agg.n_potential_emoji + agg.n_orphan_emoji);
    EXPECT_LE(agg.n_tweets_with_tone, agg.n_tweets_with_potential);
    EXPECT_LE(agg.n_tweets_with_potential, agg.n_tweets);
    if (auto p = tone_proportion(agg)) {
      EXPECT_GE(*p, 0.0);
      EXPECT_LE(*p, 1.0);
    }
    if (auto r = tweet_tone_rate(agg)) {
      EXPECT_GE(*r, 0.0);
      EXPECT_LE(*r, 1.0);
    }
  }
}

TEST(Merge, IdentityCommutativityAssociativity) {
  std::mt19937_64 rng(9);
  const CountryAggregate empty("US");
  for (int i = 0; i < 200; ++i) {
    const auto a = random_aggregate(rng);
    const auto b = random_aggregate(rng);
    const auto c = random_aggregate(rng);
    EXPECT_EQ(merge(a, empty), a);
    EXPECT_EQ(merge(a, b), merge(b, a));
    EXPECT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
  }
  EXPECT_THROW(merge(CountryAggregate("US"), CountryAggregate("BR")), std::invalid_argument);
}

TEST(Merge, ShardedEqualsSinglePass) {
  std::mt19937_64 rng(21);
  std::vector<std::pair<std::string, double>> corpus;
  for (int i = 0; i < 400; ++i) corpus.emplace_back(random_tweet(rng), static_cast<double>(rng() % 1000) / 313.0);
  CountryAggregate single("US");
  for (const auto& [text, s] : corpus) add(single, text, s);
  CountryAggregate merged("US");
  for (std::size_t shard = 0; shard < 4; ++shard) {
    CountryAggregate part("US");
    for (std::size_t i = shard * 100; i < (shard + 1) * 100; ++i) add(part, corpus[i].first, corpus[i].second);
    merge_into(merged, part);
  }
  EXPECT_EQ(merged, single);
  EXPECT_NEAR(merged.sentiment_sum.value(), single.sentiment_sum.value(), 1e-9);
}

TEST(ToneProportion, PublishedCountryRows) {
  for (const auto& row : kPublishedCountryRows) {
    CountryAggregate agg("XX");
    agg.n_potential_emoji = row.potential;
    agg.n_toned_emoji = row.toned;
    EXPECT_NEAR(*tone_proportion(agg), row.proportion, 0.005) << row.country;
  }
  EXPECT_FALSE(tone_proportion(CountryAggregate("XX")).has_value());
}

TEST(TweetToneRate, Examples) {
  CountryAggregate agg("XX");
  agg.n_tweets_with_potential = 1000;
  agg.n_tweets_with_tone = 543;
  EXPECT_DOUBLE_EQ(*tweet_tone_rate(agg), 0.543);
  agg.n_tweets_with_potential = 10;
  agg.n_tweets_with_tone = 0;
  EXPECT_EQ(*tweet_tone_rate(agg), 0.0);
  EXPECT_FALSE(tweet_tone_rate(CountryAggregate("XX")).has_value());
}

TEST(TweetToneRate, PlantedQuarterByEnumeration) {
  // Every combination of (toned?, tone, base) for 8 bases: one toned tweet
  // per three untoned ones.
  CountryAggregate agg("US");
  const std::vector<std::string> bases{"👍", "🙌", "💪", "👶", "👋", "✌", "👏", "🤞"};
  const std::vector<std::string> modifiers{"🏻", "🏼", "🏽", "🏾", "🏿"};
  for (const auto& b : bases) {
    for (const auto& m : modifiers) {
      add(agg, "look " + b + m);
      for (int k = 0; k < 3; ++k) add(agg, "look " + b);
    }
    add(agg, "no emoji");
  }
  EXPECT_EQ(*tweet_tone_rate(agg), 0.25);
}

TEST(MedianTone, Examples) {
  EXPECT_EQ(median_tone(hist(2, 0, 1, 0, 0)), 1.0);
  EXPECT_EQ(median_tone(hist(1, 0, 0, 0, 1)), 3.0);
  EXPECT_EQ(median_tone(hist(1, 1, 0, 0, 0)), 1.5);
  EXPECT_EQ(median_tone(hist(36, 25, 20, 16, 3)), 2.0);
  EXPECT_THROW(median_tone(hist(0, 0, 0, 0, 0)), std::domain_error);
}

TEST(MedianTone, InvariantUnderScaling) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    ToneHistogram h{};
    for (auto& c : h) c = rng() % 7;
    if (histogram_total(h) == 0) continue;
    const double m = median_tone(h);
    for (std::uint64_t k : {2, 3, 10}) {
      ToneHistogram scaled = h;
      for (auto& c : scaled) c *= k;
      EXPECT_EQ(median_tone(scaled), m);
    }
  }
}

TEST(ToneDistribution, Examples) {
  const auto d = tone_distribution(hist(36, 25, 20, 16, 3));
  const double expected[] = {0.36, 0.25, 0.20, 0.16, 0.03};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(d[i], expected[i], 1e-12);
  const auto dark = tone_distribution(hist(0, 0, 0, 0, 10));
  EXPECT_EQ(dark, (std::array<double, 5>{0, 0, 0, 0, 1}));
  EXPECT_THROW(tone_distribution(hist(0, 0, 0, 0, 0)), std::domain_error);
}

TEST(ToneDistribution, SumsToOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    ToneHistogram h{};
    for (auto& c : h) c = rng() % 1000000;
    if (histogram_total(h) == 0) continue;
    double sum = 0;
    for (double p : tone_distribution(h)) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(MeanTone, PerTweetVersusPooled) {
  CountryAggregate agg("US");
  add(agg, "👍🏻👍🏻👍🏻");  // tweet mean 1
  add(agg, "👍🏿");        // tweet mean 5
  EXPECT_DOUBLE_EQ(*mean_tone(agg, ToneMean::PerTweet), 3.0);
  EXPECT_DOUBLE_EQ(*mean_tone(agg, ToneMean::Pooled), 2.0);
  EXPECT_FALSE(mean_tone(CountryAggregate("US"), ToneMean::PerTweet).has_value());
  EXPECT_EQ(parse_tone_mean("pooled"), ToneMean::Pooled);
  EXPECT_EQ(parse_tone_mean("per-tweet"), ToneMean::PerTweet);
  EXPECT_FALSE(parse_tone_mean("median").has_value());
}

TEST(ExactSum, OrderIndependent) {
  std::mt19937_64 rng(4);
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i) values.push_back(std::ldexp(static_cast<double>(rng() % 100000) - 50000, -(int)(rng() % 40)));
  ExactSum forward;
  for (double v : values) forward.add(v);
  std::shuffle(values.begin(), values.end(), rng);
  ExactSum shuffled;
  for (double v : values) shuffled.add(v);
  EXPECT_EQ(forward, shuffled);
  EXPECT_EQ(forward.value(), shuffled.value());
  EXPECT_THROW(forward.add(std::nan("")), std::out_of_range);
}

TEST(AggregateCsv, HeaderAndRow) {
  CountryAggregate agg("US");
  add(agg, "👍🏿 👍", 0.25);
  add(agg, "plain");
  std::ostringstream out;
  std::vector<CountryAggregate> rows{agg};
  write_aggregate_csv(out, rows, ToneMean::PerTweet);
  EXPECT_EQ(out.str(), std::string(kAggregateCsvHeader) +
                           "\nUS,2,2,1,0.500000,1.000000,5.0,5.000000,0.250000,0.000000,0.000000,0.000000,0.000000,1.000000\n");
}

TEST(AggregateCsv, UndefinedCellsAreEmpty) {
  std::ostringstream out;
  std::vector<CountryAggregate> rows{CountryAggregate("JP")};
  rows[0].n_tweets = 3;
  write_aggregate_csv(out, rows, ToneMean::PerTweet);
  EXPECT_NE(out.str().find("\nJP,3,0,0,,,,,,,,,,\n"), std::string::npos) << out.str();
}

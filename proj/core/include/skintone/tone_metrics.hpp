#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "skintone/emoji_catalog.hpp"
#include "skintone/emoji_scanner.hpp"
#include "skintone/record.hpp"

namespace skintone {

// Order-independent sum of doubles. Each addend is rounded once to a
// multiple of 2^-80 and accumulated in a 128-bit integer, so any grouping
// of the same addends gives a bit-identical total. Addends must satisfy
// |x| < 2^46.
class ExactSum {
 public:
  void add(double value);
  void merge(const ExactSum& other) { acc_ += other.acc_; }
  double value() const;

  friend bool operator==(const ExactSum&, const ExactSum&) = default;

 private:
  __extension__ using Int128 = __int128;
  Int128 acc_ = 0;
};

// Counts of toned emoji by tone; index 0 is Light, index 4 is Dark.
using ToneHistogram = std::array<std::uint64_t, 5>;

std::uint64_t histogram_total(const ToneHistogram& hist);

// Mergeable per-country counters.
//
// Orphan modifiers enter the histogram (they carry a tone) but not the
// potential count (no base could have taken the tone), so
// n_toned_emoji == sum(tone_histogram) and tone_proportion() stays <= 1.
struct CountryAggregate {
  std::string country;
  std::uint64_t n_tweets = 0;
  std::uint64_t n_tweets_with_potential = 0;
  std::uint64_t n_tweets_with_tone = 0;
  std::uint64_t n_potential_emoji = 0;
  std::uint64_t n_toned_emoji = 0;
  std::uint64_t n_orphan_emoji = 0;
  ToneHistogram tone_histogram{};
  ExactSum sentiment_sum;
  std::uint64_t sentiment_n = 0;
  ExactSum tone_value_sum;
  std::uint64_t tone_value_n = 0;

  CountryAggregate() = default;
  explicit CountryAggregate(std::string code) : country(std::move(code)) {}

  friend bool operator==(const CountryAggregate&, const CountryAggregate&) = default;
};

// Mean of tone values over toned tokens (orphans included); nullopt when
// the tweet has no toned token.
std::optional<double> tweet_mean_tone(std::span<const EmojiToken> tokens);

// Adds one tweet. Throws std::invalid_argument when the tweet's country
// key differs from the aggregate's.
void accumulate(CountryAggregate& agg, const TweetRecord& tweet, std::span<const EmojiToken> emoji,
                const EmojiCatalog& catalog, std::optional<double> sentiment);

// Field-wise sum. Throws std::invalid_argument on a country mismatch.
void merge_into(CountryAggregate& into, const CountryAggregate& other);
CountryAggregate merge(const CountryAggregate& a, const CountryAggregate& b);

// Toned (non-orphan) emoji over potential emoji.
std::optional<double> tone_proportion(const CountryAggregate& agg);
// Tweets with a toned base over tweets with at least one potential base.
std::optional<double> tweet_tone_rate(const CountryAggregate& agg);

// Median over the multiset of tone values 1..5; the mean of the two middle
// values for even totals. Throws std::domain_error on an empty histogram.
double median_tone(const ToneHistogram& hist);
std::array<double, 5> tone_distribution(const ToneHistogram& hist);

enum class ToneMean { PerTweet, Pooled };

std::string_view to_string(ToneMean variant);
std::optional<ToneMean> parse_tone_mean(std::string_view text);

// PerTweet: mean of per-tweet mean tones. Pooled: mean over every toned
// emoji in the country.
std::optional<double> mean_tone(const CountryAggregate& agg, ToneMean variant);
std::optional<double> mean_sentiment(const CountryAggregate& agg);

inline constexpr std::string_view kAggregateCsvHeader =
    "country,n_tweets,n_potential,n_toned,proportion,tweet_tone_rate,median_tone,mean_tone,"
    "mean_sentiment,p_light,p_mlight,p_medium,p_mdark,p_dark";

// One row per aggregate, in the given order. Undefined ratios are empty cells.
void write_aggregate_csv(std::ostream& out, std::span<const CountryAggregate> aggregates, ToneMean variant);

}  // namespace skintone

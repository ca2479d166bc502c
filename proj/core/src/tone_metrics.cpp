#include "skintone/tone_metrics.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "skintone/text_format.hpp"

namespace skintone {

namespace {

constexpr int kFractionBits = 80;
constexpr double kMaxAddend = 70368744177664.0;  // 2^46

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void require_same_country(std::string_view a, std::string_view b) {
  if (a != b) throw std::invalid_argument("country mismatch: '" + std::string(a) + "' vs '" + std::string(b) + "'");
}

}  // namespace

void ExactSum::add(double value) {
  if (!std::isfinite(value) || std::fabs(value) >= kMaxAddend)
    throw std::out_of_range("ExactSum: addend out of range");
  acc_ += static_cast<Int128>(std::nearbyint(std::ldexp(value, kFractionBits)));
}

double ExactSum::value() const { return std::ldexp(static_cast<double>(acc_), -kFractionBits); }

std::uint64_t histogram_total(const ToneHistogram& hist) {
  return std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
}

std::optional<double> tweet_mean_tone(std::span<const EmojiToken> tokens) {
  int sum = 0;
  int count = 0;
  for (const auto& token : tokens) {
    if (!token.toned()) continue;
    sum += tone_value(token.tone);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(sum) / count;
}

void accumulate(CountryAggregate& agg, const TweetRecord& tweet, std::span<const EmojiToken> emoji,
                const EmojiCatalog& catalog, std::optional<double> sentiment) {
  require_same_country(agg.country, country_key(tweet));
  ++agg.n_tweets;

  std::uint64_t potential = 0;
  std::uint64_t toned_bases = 0;
  for (const auto& token : emoji) {
    if (token.orphan) {
      ++agg.n_orphan_emoji;
    } else if (catalog.is_modifier_base(token.base)) {
      ++potential;
      if (token.toned()) ++toned_bases;
    }
    if (token.toned()) {
      ++agg.n_toned_emoji;
      ++agg.tone_histogram[static_cast<std::size_t>(tone_value(token.tone) - 1)];
    }
  }
  agg.n_potential_emoji += potential;
  if (potential > 0) ++agg.n_tweets_with_potential;
  if (toned_bases > 0) ++agg.n_tweets_with_tone;

  if (auto mean = tweet_mean_tone(emoji)) {
    agg.tone_value_sum.add(*mean);
    ++agg.tone_value_n;
  }
  if (sentiment) {
    agg.sentiment_sum.add(*sentiment);
    ++agg.sentiment_n;
  }
}

void merge_into(CountryAggregate& into, const CountryAggregate& other) {
  require_same_country(into.country, other.country);
  into.n_tweets += other.n_tweets;
  into.n_tweets_with_potential += other.n_tweets_with_potential;
  into.n_tweets_with_tone += other.n_tweets_with_tone;
  into.n_potential_emoji += other.n_potential_emoji;
  into.n_toned_emoji += other.n_toned_emoji;
  into.n_orphan_emoji += other.n_orphan_emoji;
  for (std::size_t t = 0; t < into.tone_histogram.size(); ++t) into.tone_histogram[t] += other.tone_histogram[t];
  into.sentiment_sum.merge(other.sentiment_sum);
  into.sentiment_n += other.sentiment_n;
  into.tone_value_sum.merge(other.tone_value_sum);
  into.tone_value_n += other.tone_value_n;
}

CountryAggregate merge(const CountryAggregate& a, const CountryAggregate& b) {
  CountryAggregate out = a;
  merge_into(out, b);
  return out;
}

std::optional<double> tone_proportion(const CountryAggregate& agg) {
  return ratio(agg.n_toned_emoji - agg.n_orphan_emoji, agg.n_potential_emoji);
}

std::optional<double> tweet_tone_rate(const CountryAggregate& agg) {
  return ratio(agg.n_tweets_with_tone, agg.n_tweets_with_potential);
}

double median_tone(const ToneHistogram& hist) {
  const std::uint64_t total = histogram_total(hist);
  if (total == 0) throw std::domain_error("median_tone: empty histogram");
  // 0-based ranks of the middle element(s) in the sorted multiset.
  const std::uint64_t lo_rank = (total - 1) / 2;
  const std::uint64_t hi_rank = total / 2;
  auto value_at = [&](std::uint64_t rank) {
    std::uint64_t seen = 0;
    for (std::size_t t = 0; t < hist.size(); ++t) {
      seen += hist[t];
      if (rank < seen) return static_cast<double>(t + 1);
    }
    return static_cast<double>(hist.size());
  };
  return (value_at(lo_rank) + value_at(hi_rank)) / 2.0;
}

std::array<double, 5> tone_distribution(const ToneHistogram& hist) {
  const std::uint64_t total = histogram_total(hist);
  if (total == 0) throw std::domain_error("tone_distribution: empty histogram");
  std::array<double, 5> out{};
  for (std::size_t t = 0; t < hist.size(); ++t)
    out[t] = static_cast<double>(hist[t]) / static_cast<double>(total);
  return out;
}

std::string_view to_string(ToneMean variant) { return variant == ToneMean::PerTweet ? "per-tweet" : "pooled"; }

std::optional<ToneMean> parse_tone_mean(std::string_view text) {
  if (text == "per-tweet") return ToneMean::PerTweet;
  if (text == "pooled") return ToneMean::Pooled;
  return std::nullopt;
}

std::optional<double> mean_tone(const CountryAggregate& agg, ToneMean variant) {
  if (variant == ToneMean::PerTweet) {
    if (agg.tone_value_n == 0) return std::nullopt;
    return agg.tone_value_sum.value() / static_cast<double>(agg.tone_value_n);
  }
  const std::uint64_t total = histogram_total(agg.tone_histogram);
  if (total == 0) return std::nullopt;
  std::uint64_t weighted = 0;
  for (std::size_t t = 0; t < agg.tone_histogram.size(); ++t) weighted += (t + 1) * agg.tone_histogram[t];
  return static_cast<double>(weighted) / static_cast<double>(total);
}

std::optional<double> mean_sentiment(const CountryAggregate& agg) {
  if (agg.sentiment_n == 0) return std::nullopt;
  return agg.sentiment_sum.value() / static_cast<double>(agg.sentiment_n);
}

void write_aggregate_csv(std::ostream& out, std::span<const CountryAggregate> aggregates, ToneMean variant) {
  constexpr int kPrecision = 6;
  out << kAggregateCsvHeader << '\n';
  for (const auto& agg : aggregates) {
    out << agg.country << ',' << agg.n_tweets << ',' << agg.n_potential_emoji << ',' << agg.n_toned_emoji << ','
        << format_fixed(tone_proportion(agg), kPrecision) << ','
        << format_fixed(tweet_tone_rate(agg), kPrecision) << ',';
    const bool has_tones = histogram_total(agg.tone_histogram) > 0;
    if (has_tones) out << format_fixed(median_tone(agg.tone_histogram), 1);
    out << ',' << format_fixed(mean_tone(agg, variant), kPrecision) << ','
        << format_fixed(mean_sentiment(agg), kPrecision);
    if (has_tones) {
      for (double p : tone_distribution(agg.tone_histogram)) out << ',' << format_fixed(p, kPrecision);
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

}  // namespace skintone

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skintone/emoji_catalog.hpp"
#include "skintone/ingest.hpp"
#include "skintone/record.hpp"
#include "skintone/report.hpp"
#include "skintone/sentiment_lexicon.hpp"
#include "skintone/stats.hpp"
#include "skintone/tone_metrics.hpp"

namespace skintone {

struct AnalysisOptions {
  Aggregation aggregation = Aggregation::Sum;
  ToneMean tone_mean = ToneMean::PerTweet;
  std::size_t shards = 1;
  std::size_t top_n = 50;
  double band_level = 0.95;

  // Throws std::invalid_argument for zero shards/top_n or a level outside (0, 1).
  void validate() const;
};

// One correlation/regression over (mean tone, mean sentiment) pairs.
// `note` is "insufficient data" when fewer than 3 pairs exist or a series is
// constant; correlation and fit are then absent.
struct CorrelationSection {
  std::string scope;
  std::uint64_t n = 0;
  std::optional<stats::CorrelationResult> correlation;
  std::optional<stats::RegressionFit> fit;
  std::string note;
  std::vector<ScatterPoint> points;  // only filled for country-level scopes
};

struct AnalysisResult {
  std::vector<CountryAggregate> aggregates;  // sorted by country code
  std::vector<double> tweet_tone;            // tweets with both a tone and a sentiment, in input order
  std::vector<double> tweet_sentiment;
  CorrelationSection global_tweets;
  CorrelationSection countries_all;  // "??" excluded
  CorrelationSection countries_top;  // top_n eligible countries by tweet count
};

// Scans, scores and aggregates `records` in `options.shards` contiguous
// shards run on separate threads. The result does not depend on the shard
// count.
AnalysisResult analyze(std::span<const TweetRecord> records, const EmojiCatalog& catalog,
                       const SentimentLexicon& lexicon, const AnalysisOptions& options);

CorrelationSection correlate_pairs(std::string scope, std::span<const double> tone, std::span<const double> sentiment);

inline constexpr const char* kCorrelationCsvHeader =
    "scope,n,r,df,p_two_sided,p_note,slope,intercept,residual_se,note";
void write_correlation_csv(std::ostream& out, const AnalysisResult& result);

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path catalog_path;  // empty: bundled catalog
  std::filesystem::path lexicon_path;  // empty: bundled lexicon
  std::uint64_t min_occurrences = kDefaultMinOccurrences;
  AnalysisOptions analysis;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;  // echoed in the manifest
};

struct RunSummary {
  AnalysisResult analysis;
  IngestStats ingest;
  std::vector<std::filesystem::path> outputs;
};

// Full batch run: ingest, analyze, then write aggregates.csv,
// correlation.csv, scatter_countries.svg, scatter_top.svg (when the scope
// has enough data) and manifest.json into out_dir.
RunSummary run_pipeline(const RunConfig& config);

}  // namespace skintone

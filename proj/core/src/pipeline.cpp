#include "skintone/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "skintone/emoji_scanner.hpp"
#include "skintone/error.hpp"
#include "skintone/text_format.hpp"

namespace skintone {

namespace {

constexpr const char* kInsufficient = "insufficient data";

struct ShardResult {
  std::map<std::string, CountryAggregate> aggregates;
  std::vector<double> tone;
  std::vector<double> sentiment;
};

void process_shard(std::span<const TweetRecord> records, const EmojiCatalog& catalog, const SentimentLexicon& lexicon,
                   Aggregation aggregation, ShardResult& out) {
  for (const auto& rec : records) {
    const auto emoji = scan_emoji(catalog, rec.text);
    const auto sentiment = tweet_sentiment(lexicon, emoji, aggregation);
    const std::string key(country_key(rec));
    auto it = out.aggregates.find(key);
    if (it == out.aggregates.end()) it = out.aggregates.emplace(key, CountryAggregate(key)).first;
    accumulate(it->second, rec, emoji, catalog, sentiment);
    if (const auto tone = tweet_mean_tone(emoji); tone && sentiment) {
      out.tone.push_back(*tone);
      out.sentiment.push_back(*sentiment);
    }
  }
}

CorrelationSection country_section(std::string scope, const std::vector<const CountryAggregate*>& countries,
                                   ToneMean variant) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<ScatterPoint> points;
  for (const auto* agg : countries) {
    const double x = *mean_tone(*agg, variant);
    const double y = *mean_sentiment(*agg);
    xs.push_back(x);
    ys.push_back(y);
    points.push_back({x, y, agg->country, static_cast<double>(agg->n_tweets)});
  }
  auto section = correlate_pairs(std::move(scope), xs, ys);
  section.points = std::move(points);
  return section;
}

std::string optional_cell(bool present, double value, int precision) {
  return present ? format_general(value, precision) : std::string{};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void AnalysisOptions::validate() const {
  if (shards == 0) throw std::invalid_argument("shards must be at least 1");
  if (top_n == 0) throw std::invalid_argument("top must be at least 1");
  if (!(band_level > 0.0 && band_level < 1.0)) throw std::invalid_argument("band level must lie in (0, 1)");
}

CorrelationSection correlate_pairs(std::string scope, std::span<const double> tone, std::span<const double> sentiment) {
  CorrelationSection section;
  section.scope = std::move(scope);
  section.n = tone.size();
  if (tone.size() < 3) {
    section.note = kInsufficient;
    return section;
  }
  try {
    section.correlation = stats::pearson(tone, sentiment);
    section.fit = stats::ols_fit(tone, sentiment);
  } catch (const std::domain_error&) {
    section.correlation.reset();
    section.fit.reset();
    section.note = kInsufficient;
  }
  return section;
}

AnalysisResult analyze(std::span<const TweetRecord> records, const EmojiCatalog& catalog,
                       const SentimentLexicon& lexicon, const AnalysisOptions& options) {
  options.validate();
  const std::size_t shards = std::max<std::size_t>(1, std::min(options.shards, records.size()));
  std::vector<ShardResult> parts(shards);
  auto bounds = [&](std::size_t i) { return records.size() * i / shards; };

  if (shards == 1) {
    process_shard(records, catalog, lexicon, options.aggregation, parts[0]);
  } else {
    std::vector<std::jthread> workers;
    std::vector<std::exception_ptr> errors(shards);
    for (std::size_t i = 0; i < shards; ++i) {
      workers.emplace_back([&, i] {
        try {
          process_shard(records.subspan(bounds(i), bounds(i + 1) - bounds(i)), catalog, lexicon, options.aggregation,
                        parts[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    workers.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  AnalysisResult result;
  std::map<std::string, CountryAggregate> merged;
  for (auto& part : parts) {
    for (auto& [key, agg] : part.aggregates) {
      auto [it, inserted] = merged.try_emplace(key, agg);
      if (!inserted) merge_into(it->second, agg);
    }
    result.tweet_tone.insert(result.tweet_tone.end(), part.tone.begin(), part.tone.end());
    result.tweet_sentiment.insert(result.tweet_sentiment.end(), part.sentiment.begin(), part.sentiment.end());
  }
  for (auto& [key, agg] : merged) result.aggregates.push_back(std::move(agg));

  result.global_tweets = correlate_pairs("global_tweets", result.tweet_tone, result.tweet_sentiment);

  std::vector<const CountryAggregate*> eligible;
  for (const auto& agg : result.aggregates) {
    if (agg.country == kUnknownCountry) continue;
    if (mean_tone(agg, options.tone_mean) && mean_sentiment(agg)) eligible.push_back(&agg);
  }
  result.countries_all = country_section("countries_all", eligible, options.tone_mean);

  std::vector<const CountryAggregate*> top = eligible;
  std::stable_sort(top.begin(), top.end(),
                   [](const CountryAggregate* a, const CountryAggregate* b) { return a->n_tweets > b->n_tweets; });
  if (top.size() > options.top_n) top.resize(options.top_n);
  std::sort(top.begin(), top.end(),
            [](const CountryAggregate* a, const CountryAggregate* b) { return a->country < b->country; });
  result.countries_top = country_section("countries_top", top, options.tone_mean);
  return result;
}

void write_correlation_csv(std::ostream& out, const AnalysisResult& result) {
  out << kCorrelationCsvHeader << '\n';
  for (const auto* s : {&result.global_tweets, &result.countries_all, &result.countries_top}) {
    const bool has = s->correlation.has_value();
    const auto c = s->correlation.value_or(stats::CorrelationResult{});
    const auto f = s->fit.value_or(stats::RegressionFit{});
    out << s->scope << ',' << s->n << ',' << (has ? format_fixed(c.r, 6) : "") << ','
        << (has ? std::to_string(c.df) : "") << ',' << optional_cell(has, c.p_two_sided, 6) << ','
        << (has && c.p_underflow ? "p < machine epsilon" : "") << ',' << optional_cell(has, f.slope, 8) << ','
        << optional_cell(has, f.intercept, 8) << ',' << optional_cell(has, f.residual_se, 8) << ',' << s->note
        << '\n';
  }
}

RunSummary run_pipeline(const RunConfig& config) {
  config.analysis.validate();
  if (config.inputs.empty()) throw std::invalid_argument("no input files");
  if (config.out_dir.empty()) throw std::invalid_argument("no output directory");

  const auto catalog_path = config.catalog_path.empty() ? default_catalog_path() : config.catalog_path;
  const auto lexicon_path = config.lexicon_path.empty() ? default_lexicon_path() : config.lexicon_path;
  const auto catalog = load_catalog(catalog_path);
  const auto lexicon = load_lexicon(lexicon_path, config.min_occurrences);

  auto ingested = ingest_all(config.inputs);
  RunSummary summary;
  summary.ingest = ingested.stats;
  if (ingested.records.empty()) throw std::invalid_argument("empty corpus: no parseable records");
  summary.analysis = analyze(ingested.records, catalog, lexicon, config.analysis);

  std::filesystem::create_directories(config.out_dir);
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = config.out_dir / name;
    write_file(path, content);
    summary.outputs.push_back(path);
  };

  {
    std::ostringstream csv;
    write_aggregate_csv(csv, summary.analysis.aggregates, config.analysis.tone_mean);
    emit("aggregates.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_correlation_csv(csv, summary.analysis);
    emit("correlation.csv", csv.str());
  }
  auto scatter = [&](const CorrelationSection& s, const std::string& name, const std::string& title) {
    if (!s.fit || s.points.size() < 3) return;
    ScatterOptions opts;
    opts.title = title;
    emit(name, report_scatter(s.points, *s.fit, config.analysis.band_level, opts));
  };
  scatter(summary.analysis.countries_all, "scatter_countries.svg", "All countries");
  scatter(summary.analysis.countries_top, "scatter_top.svg",
          "Top " + std::to_string(config.analysis.top_n) + " countries by tweet count");

  nlohmann::ordered_json manifest;
  manifest["tool"] = "skintone";
  manifest["inputs"] = nlohmann::ordered_json::array();
  for (const auto& p : config.inputs) manifest["inputs"].push_back(p.string());
  manifest["catalog"] = {{"path", catalog_path.string()}, {"version", catalog.version()}, {"bases", catalog.size()}};
  manifest["lexicon"] = {{"path", lexicon_path.string()},
                         {"min_occurrences", lexicon.min_occurrences()},
                         {"entries", lexicon.size()}};
  manifest["config"] = {{"aggregation", std::string(to_string(config.analysis.aggregation))},
                        {"tone_mean", std::string(to_string(config.analysis.tone_mean))},
                        {"shards", config.analysis.shards},
                        {"top", config.analysis.top_n},
                        {"band_level", config.analysis.band_level},
                        {"seed", config.seed}};
  manifest["records"] = {{"total", summary.ingest.parsed + summary.ingest.malformed},
                         {"parsed", summary.ingest.parsed},
                         {"skipped", summary.ingest.malformed}};
  manifest["countries"] = summary.analysis.aggregates.size();
  manifest["tweet_pairs"] = summary.analysis.tweet_tone.size();
  manifest["outputs"] = nlohmann::ordered_json::array();
  for (const auto& p : summary.outputs) manifest["outputs"].push_back(p.filename().string());
  emit("manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace skintone

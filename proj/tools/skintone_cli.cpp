// skintone: command-line front end for the skin-tone emoji pipeline.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "skintone/corpus_generator.hpp"
#include "skintone/embeddings.hpp"
#include "skintone/emoji_catalog.hpp"
#include "skintone/emoji_scanner.hpp"
#include "skintone/ingest.hpp"
#include "skintone/pipeline.hpp"
#include "skintone/sentiment_lexicon.hpp"
#include "skintone/text_format.hpp"

namespace fs = std::filesystem;
using namespace skintone;

namespace {

struct GlobalOptions {
  std::string catalog;
  std::string lexicon;
  std::string agg = "sum";
  std::string tone_mean = "per-tweet";
  std::uint64_t min_occ = kDefaultMinOccurrences;
  std::size_t shards = 1;
  std::size_t top = 50;
  std::string out;
  std::uint64_t seed = 1;
};

EmojiCatalog open_catalog(const GlobalOptions& g) {
  return load_catalog(g.catalog.empty() ? default_catalog_path() : fs::path(g.catalog));
}

SentimentLexicon open_lexicon(const GlobalOptions& g) {
  return load_lexicon(g.lexicon.empty() ? default_lexicon_path() : fs::path(g.lexicon), g.min_occ);
}

AnalysisOptions analysis_options(const GlobalOptions& g) {
  AnalysisOptions opts;
  opts.aggregation = *parse_aggregation(g.agg);
  opts.tone_mean = *parse_tone_mean(g.tone_mean);
  opts.shards = g.shards;
  opts.top_n = g.top;
  return opts;
}

std::vector<fs::path> to_paths(const std::vector<std::string>& files) { return {files.begin(), files.end()}; }

void report_ingest(const IngestStats& stats) {
  if (stats.malformed > 0)
    std::cerr << "skipped " << stats.malformed << " malformed line(s) of " << stats.total_lines << '\n';
}

int run_scan(const GlobalOptions& g, const std::string& file) {
  const auto catalog = open_catalog(g);
  const auto data = ingest(fs::path(file));
  report_ingest(data.stats);
  std::cout << "id\tbyte_offset\tbase\ttone\torphan\n";
  for (const auto& rec : data.records) {
    for (const auto& tok : scan_emoji(catalog, rec.text)) {
      std::cout << rec.id << '\t' << tok.byte_offset << '\t' << (tok.base.empty() ? "" : to_hex(tok.base)) << '\t'
                << tone_value(tok.tone) << '\t' << (tok.orphan ? 1 : 0) << '\n';
    }
  }
  return 0;
}

AnalysisResult analyze_files(const GlobalOptions& g, const std::vector<std::string>& files) {
  const auto catalog = open_catalog(g);
  const auto lexicon = open_lexicon(g);
  const auto paths = to_paths(files);
  const auto data = ingest_all(paths);
  report_ingest(data.stats);
  if (data.records.empty()) throw std::invalid_argument("empty corpus: no parseable records");
  return analyze(data.records, catalog, lexicon, analysis_options(g));
}

int run_aggregate(const GlobalOptions& g, const std::vector<std::string>& files) {
  const auto result = analyze_files(g, files);
  const auto variant = *parse_tone_mean(g.tone_mean);
  if (g.out.empty()) {
    write_aggregate_csv(std::cout, result.aggregates, variant);
    return 0;
  }
  fs::create_directories(g.out);
  std::ofstream out(fs::path(g.out) / "aggregates.csv", std::ios::binary);
  write_aggregate_csv(out, result.aggregates, variant);
  return out ? 0 : 1;
}

int run_correlate(const GlobalOptions& g, const std::vector<std::string>& files) {
  const auto result = analyze_files(g, files);
  if (g.out.empty()) {
    write_correlation_csv(std::cout, result);
    return 0;
  }
  fs::create_directories(g.out);
  std::ofstream out(fs::path(g.out) / "correlation.csv", std::ios::binary);
  write_correlation_csv(out, result);
  return out ? 0 : 1;
}

int run_report(const GlobalOptions& g, const std::vector<std::string>& files) {
  if (g.out.empty()) throw std::invalid_argument("report needs --out DIR");
  RunConfig config;
  config.inputs = to_paths(files);
  config.catalog_path = g.catalog;
  config.lexicon_path = g.lexicon;
  config.min_occurrences = g.min_occ;
  config.analysis = analysis_options(g);
  config.out_dir = g.out;
  config.seed = g.seed;
  const auto summary = run_pipeline(config);
  report_ingest(summary.ingest);
  for (const auto& p : summary.outputs) std::cout << p.string() << '\n';
  return 0;
}

int run_embed(const GlobalOptions& g, const std::vector<std::string>& files, embed::EmbedConfig config,
              const std::string& model_path) {
  config.seed = g.seed;
  config.validate();
  const auto catalog = open_catalog(g);
  const auto paths = to_paths(files);
  const auto data = ingest_all(paths);
  report_ingest(data.stats);
  std::vector<embed::Sentence> sentences;
  sentences.reserve(data.records.size());
  for (const auto& rec : data.records) {
    auto tokens = clean_and_tokenize(catalog, rec.text);
    if (!tokens.empty()) sentences.push_back(std::move(tokens));
  }
  const auto model = embed::train_cbow(sentences, config);
  for (std::size_t e = 0; e < model.epoch_losses.size(); ++e)
    std::cerr << "epoch " << (e + 1) << " mean loss " << format_fixed(model.epoch_losses[e], 6) << '\n';
  std::ofstream out(model_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + model_path);
  embed::save_model(model, out);
  std::cerr << "vocabulary " << model.vocab.size() << " tokens, written to " << model_path << '\n';
  return out ? 0 : 1;
}

int run_nearest(const std::string& token, std::size_t k, const std::string& model_path) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + model_path);
  const auto model = embed::load_model(in, model_path);
  for (const auto& n : embed::nearest(model, token, k)) std::cout << n.token << '\t' << format_fixed(n.similarity, 6) << '\n';
  return 0;
}

int run_generate(const GlobalOptions& g, GeneratorConfig config, const std::string& output) {
  config.seed = g.seed;
  const auto catalog = open_catalog(g);
  const auto lexicon = open_lexicon(g);
  const auto corpus = generate_corpus(config, catalog, lexicon);
  if (output.empty() || output == "-") {
    write_ndjson(std::cout, corpus.records);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output);
    write_ndjson(out, corpus.records);
  }
  std::vector<double> tone;
  std::vector<double> sentiment;
  for (const auto& c : corpus.countries) {
    tone.push_back(c.tone_mean);
    sentiment.push_back(c.sentiment_mean);
  }
  std::cerr << corpus.records.size() << " records, " << corpus.countries.size()
            << " countries, planted country-level r " << format_fixed(sample_correlation(tone, sentiment), 4) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skin-tone emoji usage and sentiment analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--catalog", g.catalog, "Modifier-base catalog file (default: bundled)");
  app.add_option("--lexicon", g.lexicon, "Emoji sentiment lexicon CSV (default: bundled)");
  app.add_option("--agg", g.agg, "Tweet sentiment aggregation")->check(CLI::IsMember({"sum", "mean"}));
  app.add_option("--tone-mean", g.tone_mean, "Country mean tone variant")->check(CLI::IsMember({"per-tweet", "pooled"}));
  app.add_option("--min-occ", g.min_occ, "Minimum lexicon occurrences for an emoji to be scored");
  app.add_option("--shards", g.shards, "Number of accumulation shards")->check(CLI::PositiveNumber);
  app.add_option("--top", g.top, "Countries kept in the top-N correlation")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--seed", g.seed, "Random seed");

  std::string scan_file;
  auto* scan = app.add_subcommand("scan", "Dump emoji tokens of an NDJSON file as TSV");
  scan->add_option("file", scan_file, "NDJSON input")->required()->check(CLI::ExistingFile);

  std::vector<std::string> files;
  auto add_inputs = [&](CLI::App* sub) { sub->add_option("files", files, "NDJSON inputs")->required()->check(CLI::ExistingFile); };

  auto* aggregate = app.add_subcommand("aggregate", "Per-country aggregate CSV");
  add_inputs(aggregate);
  auto* correlate = app.add_subcommand("correlate", "Tweet- and country-level correlation CSV");
  add_inputs(correlate);
  auto* report = app.add_subcommand("report", "Full run: aggregates, correlations, scatter plots, manifest");
  add_inputs(report);

  embed::EmbedConfig embed_config;
  std::string model_path;
  auto* embed_cmd = app.add_subcommand("embed", "Train a CBOW embedding over cleaned tweet tokens");
  add_inputs(embed_cmd);
  embed_cmd->add_option("--model", model_path, "Model output file")->required();
  embed_cmd->add_option("--dim", embed_config.dim, "Vector dimension")->capture_default_str();
  embed_cmd->add_option("--window", embed_config.window, "Context window each side")->capture_default_str();
  embed_cmd->add_option("--min-count", embed_config.min_count, "Minimum token frequency")->capture_default_str();
  embed_cmd->add_option("--negatives", embed_config.negatives, "Negative samples per target")->capture_default_str();
  embed_cmd->add_option("--epochs", embed_config.epochs, "Training epochs")->capture_default_str();
  embed_cmd->add_option("--lr", embed_config.learning_rate, "Initial learning rate")->capture_default_str();
  embed_cmd->add_option("--threads", embed_config.threads, "Training threads (1 is deterministic)")->capture_default_str();

  std::string token;
  std::size_t k = 10;
  std::string nearest_model;
  auto* nearest_cmd = app.add_subcommand("nearest", "Nearest neighbours of a token by cosine similarity");
  nearest_cmd->add_option("token", token, "Query token")->required();
  nearest_cmd->add_option("-k", k, "Number of neighbours")->capture_default_str()->check(CLI::PositiveNumber);
  nearest_cmd->add_option("--model", nearest_model, "Model file written by embed")->required()->check(CLI::ExistingFile);

  GeneratorConfig gen_config;
  std::string gen_output;
  auto* generate = app.add_subcommand("generate", "Synthetic corpus with a planted country-level correlation");
  generate->add_option("--countries", gen_config.countries, "Number of countries")->capture_default_str();
  generate->add_option("--tweets-per-country", gen_config.tweets_per_country, "Tweets per country")->capture_default_str();
  generate->add_option("--rho", gen_config.rho, "Planted country-level correlation")->capture_default_str();
  generate->add_option("--toned-fraction", gen_config.toned_fraction, "Share of emoji tweets whose base is toned")
      ->capture_default_str();
  generate->add_option("-o,--output", gen_output, "NDJSON output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) return run_scan(g, scan_file);
    if (*aggregate) return run_aggregate(g, files);
    if (*correlate) return run_correlate(g, files);
    if (*report) return run_report(g, files);
    if (*embed_cmd) return run_embed(g, files, embed_config, model_path);
    if (*nearest_cmd) return run_nearest(token, k, nearest_model);
    if (*generate) return run_generate(g, gen_config, gen_output);
  } catch (const std::exception& e) {
    std::cerr << "skintone: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

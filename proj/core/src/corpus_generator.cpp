#include "skintone/corpus_generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string_view>

#include "skintone/emoji_scanner.hpp"
#include "skintone/utf8.hpp"

namespace skintone {

namespace {

constexpr std::array<std::string_view, 60> kCountryCodes{
    "US", "BR", "JP", "GB", "PH", "AR", "TR", "ES", "MY", "FR", "MX", "ID", "IT", "CA", "TH",
    "DE", "SA", "CL", "CO", "VE", "ZA", "NG", "KE", "EG", "IN", "AU", "NL", "PT", "IE", "BE",
    "SE", "NO", "FI", "DK", "PL", "RU", "UA", "KR", "TW", "AE", "QA", "KW", "PY", "UY", "PE",
    "EC", "DO", "PR", "JM", "GH", "NZ", "SG", "CH", "AT", "GR", "IL", "PK", "BD", "VN", "CR"};

constexpr std::array<std::string_view, 32> kWords{
    "love", "this", "so", "much", "today", "game", "friends", "lol", "omg", "good", "morning", "night",
    "happy", "birthday", "thank", "you", "great", "day", "the", "best", "new", "music", "video", "yes",
    "not", "again", "week", "finally", "here", "we", "go", "tho"};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void standardize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double& x : v) {
    x -= mean;
    ss += x * x;
  }
  const double sd = std::sqrt(ss / static_cast<double>(v.size()));
  for (double& x : v) x /= sd;
}

std::vector<std::string> country_codes(std::size_t n) {
  std::vector<std::string> out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < n && i < kCountryCodes.size(); ++i) {
    out.emplace_back(kCountryCodes[i]);
    used.emplace(kCountryCodes[i]);
  }
  for (char a = 'A'; a <= 'Z' && out.size() < n; ++a) {
    for (char b = 'A'; b <= 'Z' && out.size() < n; ++b) {
      std::string code{a, b};
      if (used.insert(code).second) out.push_back(code);
    }
  }
  if (out.size() < n) throw std::invalid_argument("generate_corpus: too many countries");
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

double sample_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

GeneratedCorpus generate_corpus(const GeneratorConfig& config, const EmojiCatalog& catalog,
                                const SentimentLexicon& lexicon) {
  if (config.countries < 3) throw std::invalid_argument("generate_corpus: need at least 3 countries");
  if (!(std::fabs(config.rho) <= 1.0)) throw std::invalid_argument("generate_corpus: rho outside [-1, 1]");

  // Sentiment carriers: extreme lexicon entries that are not modifier bases
  // and that the scanner recognises as emoji.
  const LexiconEntry* most_positive = nullptr;
  const LexiconEntry* most_negative = nullptr;
  double best = -2.0;
  double worst = 2.0;
  const auto entries = lexicon.sorted_entries();
  for (const auto& entry : entries) {
    if (catalog.is_modifier_base(entry.emoji)) continue;
    const auto tokens = scan_emoji(catalog, utf8::encode(entry.emoji));
    if (tokens.size() != 1 || tokens.front().base != entry.emoji) continue;
    const double s = emoji_score(entry);
    if (s > best) {
      best = s;
      most_positive = &entry;
    }
    if (s < worst) {
      worst = s;
      most_negative = &entry;
    }
  }
  if (most_positive == nullptr || most_negative == nullptr || !(best > worst))
    throw std::invalid_argument("generate_corpus: lexicon needs two distinct non-base scores");

  std::vector<CodeSequence> bases;
  for (const auto& base : catalog.sorted_bases())
    if (!lexicon.score(base)) bases.push_back(base);
  if (bases.empty()) bases = catalog.sorted_bases();
  if (bases.empty()) throw std::invalid_argument("generate_corpus: empty catalog");

  std::mt19937_64 rng(config.seed);
  const std::size_t n = config.countries;

  // Latent country means with sample correlation exactly rho.
  std::vector<double> z1(n);
  std::vector<double> z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    z1[i] = standard_normal(rng);
    z2[i] = standard_normal(rng);
  }
  standardize(z1);
  standardize(z2);
  double proj = 0.0;
  for (std::size_t i = 0; i < n; ++i) proj += z1[i] * z2[i];
  proj /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) z2[i] -= proj * z1[i];
  standardize(z2);
  std::vector<double> sentiment_latent(n);
  const double orth = std::sqrt(std::max(0.0, 1.0 - config.rho * config.rho));
  for (std::size_t i = 0; i < n; ++i) sentiment_latent[i] = config.rho * z1[i] + orth * z2[i];

  const double tone_room = std::min(config.tone_center - 1.0, 5.0 - config.tone_center) * 0.95;
  const double tone_scale = std::min(config.tone_spread, tone_room / max_abs(z1));
  const double sent_mid = 0.5 * (best + worst);
  const double sent_scale = std::min(config.sentiment_spread, 0.95 * 0.5 * (best - worst) / max_abs(sentiment_latent));

  GeneratedCorpus corpus;
  const auto codes = country_codes(n);
  const std::string positive_text = utf8::encode(most_positive->emoji);
  const std::string negative_text = utf8::encode(most_negative->emoji);

  for (std::size_t c = 0; c < n; ++c) {
    PlantedCountry planted{codes[c], config.tone_center + tone_scale * z1[c], sent_mid + sent_scale * sentiment_latent[c]};
    const double tone_floor = std::floor(planted.tone_mean);
    const double tone_frac = planted.tone_mean - tone_floor;
    const double p_positive = (planted.sentiment_mean - worst) / (best - worst);

    for (std::size_t t = 0; t < config.tweets_per_country; ++t) {
      TweetRecord rec;
      rec.id = codes[c] + "-" + std::to_string(t + 1);
      rec.lang = "en";
      rec.country = codes[c];
      rec.created_at = "2017-03-01T12:00:00Z";

      std::vector<std::string> parts;
      const std::size_t words = 2 + pick(rng, 5);
      for (std::size_t w = 0; w < words; ++w) parts.emplace_back(kWords[pick(rng, kWords.size())]);

      if (uniform01(rng) < config.emoji_fraction) {
        std::string emoji = utf8::encode(bases[pick(rng, bases.size())]);
        if (uniform01(rng) < config.toned_fraction) {
          int tone = static_cast<int>(tone_floor) + (uniform01(rng) < tone_frac ? 1 : 0);
          tone = std::clamp(tone, 1, 5);
          utf8::append(emoji, modifier_codepoint(static_cast<SkinTone>(tone)));
        }
        parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(pick(rng, parts.size() + 1)), std::move(emoji));
        parts.push_back(uniform01(rng) < p_positive ? positive_text : negative_text);
      }
      if (uniform01(rng) < config.noise_fraction) {
        switch (pick(rng, 3)) {
          case 0: parts.insert(parts.begin(), "@user" + std::to_string(pick(rng, 1000))); break;
          case 1: parts.push_back("#tag" + std::to_string(pick(rng, 100))); break;
          default: parts.push_back("https://t.co/x" + std::to_string(pick(rng, 100000))); break;
        }
      }

      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) rec.text.push_back(' ');
        rec.text += parts[i];
      }
      corpus.records.push_back(std::move(rec));
    }
    corpus.countries.push_back(std::move(planted));
  }
  return corpus;
}

}  // namespace skintone

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "skintone/emoji_catalog.hpp"
#include "skintone/record.hpp"
#include "skintone/sentiment_lexicon.hpp"

namespace skintone {

// Synthetic geotagged corpus with a planted country-level relation between
// mean tone and mean sentiment.
//
// Each country gets a latent mean tone and mean sentiment. Across countries
// the latent pairs have sample correlation exactly `rho`. A tweet carries a
// modifier base (toned with probability `toned_fraction`, the tone drawn
// from the two integers bracketing the country's mean so the expectation
// matches it) and one sentiment emoji chosen between the most positive and
// most negative scannable lexicon entries so the expected score matches the
// country's sentiment mean. Bases are chosen among those the lexicon cannot
// score, so tone and sentiment do not interact through the base.
struct GeneratorConfig {
  std::size_t countries = 50;
  std::size_t tweets_per_country = 2000;
  double rho = -0.3;
  std::uint64_t seed = 1;
  double tone_center = 2.8;
  double tone_spread = 0.6;        // sd of latent country tone means
  double sentiment_spread = 0.15;  // sd of latent country sentiment means
  double emoji_fraction = 0.9;     // tweets that carry emoji at all
  double toned_fraction = 0.6;     // emoji tweets whose base carries a tone
  double noise_fraction = 0.1;     // tweets that also carry a mention, hashtag or URL
};

struct PlantedCountry {
  std::string code;
  double tone_mean;
  double sentiment_mean;
};

struct GeneratedCorpus {
  std::vector<TweetRecord> records;
  std::vector<PlantedCountry> countries;
};

// Throws std::invalid_argument for fewer than 3 countries, |rho| > 1, or a
// lexicon without at least two scoreable non-base emoji.
GeneratedCorpus generate_corpus(const GeneratorConfig& config, const EmojiCatalog& catalog,
                                const SentimentLexicon& lexicon);

// Exact sample correlation of two equally long series (used to report the
// planted value).
double sample_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace skintone

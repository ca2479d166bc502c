#pragma once

// Shared setups for the embedding checks: finite-difference comparison of
// the CBOW gradient and the synthetic marker-token corpus.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skintone/embeddings.hpp"

namespace checks {

struct GradientCheck {
  double max_relative_error = 0.0;  // norm-wise, over both tables
};

// Random parameter tables and a random example (repeats allowed), then
// analytic gradient against central differences with step h.
inline GradientCheck finite_difference_check(std::uint64_t seed, std::size_t dim, double h = 1e-5) {
  using namespace skintone::embed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-0.8, 0.8);
  const std::size_t vocab = 6 + rng() % 5;
  std::vector<double> input(vocab * dim);
  std::vector<double> output(vocab * dim);
  for (auto& v : input) v = value(rng);
  for (auto& v : output) v = value(rng);
  CbowExample ex;
  const std::size_t context = 1 + rng() % 6;
  for (std::size_t i = 0; i < context; ++i) ex.context.push_back(rng() % vocab);
  ex.target = rng() % vocab;
  const std::size_t negatives = 1 + rng() % 5;
  for (std::size_t i = 0; i < negatives; ++i) ex.negatives.push_back(rng() % vocab);

  const auto grad = cbow_gradient(input, output, dim, ex);
  double diff2 = 0.0;
  double analytic2 = 0.0;
  double numeric2 = 0.0;
  auto probe = [&](std::vector<double>& table, const std::vector<double>& analytic) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double saved = table[i];
      table[i] = saved + h;
      const double up = cbow_loss(input, output, dim, ex);
      table[i] = saved - h;
      const double down = cbow_loss(input, output, dim, ex);
      table[i] = saved;
      const double numeric = (up - down) / (2 * h);
      diff2 += (numeric - analytic[i]) * (numeric - analytic[i]);
      analytic2 += analytic[i] * analytic[i];
      numeric2 += numeric * numeric;
    }
  };
  probe(input, grad.input);
  probe(output, grad.output);
  const double scale = std::max({std::sqrt(analytic2), std::sqrt(numeric2), 1e-12});
  return {std::sqrt(diff2) / scale};
}

// Sentences of filler words with one base token followed immediately by one
// of five marker tokens, the way a tone modifier follows its base.
inline std::vector<skintone::embed::Sentence> marker_corpus(std::uint64_t seed, std::size_t sentences = 3000) {
  std::mt19937_64 rng(seed);
  std::vector<skintone::embed::Sentence> out;
  for (std::size_t s = 0; s < sentences; ++s) {
    skintone::embed::Sentence sentence;
    const std::size_t before = rng() % 4;
    const std::size_t after = rng() % 4;
    for (std::size_t i = 0; i < before; ++i) sentence.push_back("w" + std::to_string(rng() % 40));
    sentence.push_back("base" + std::to_string(rng() % 20));
    sentence.push_back("marker" + std::to_string(1 + rng() % 5));
    for (std::size_t i = 0; i < after; ++i) sentence.push_back("w" + std::to_string(rng() % 40));
    out.push_back(std::move(sentence));
  }
  return out;
}

// True when, for every marker, the other four markers rank above every
// base token in its neighbour list.
inline bool markers_cluster(const skintone::embed::EmbeddingModel& model) {
  for (int m = 1; m <= 5; ++m) {
    const auto neighbours = skintone::embed::nearest(model, "marker" + std::to_string(m), model.vocab.size() - 1);
    int markers_seen = 0;
    for (const auto& n : neighbours) {
      if (n.token.rfind("marker", 0) == 0) {
        ++markers_seen;
      } else if (n.token.rfind("base", 0) == 0) {
        if (markers_seen < 4) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace checks

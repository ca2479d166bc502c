#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace skintone::embed {

using Sentence = std::vector<std::string>;

struct EmbedConfig {
  std::size_t dim = 400;
  std::size_t window = 5;  // tokens on each side, fixed (no random shrinking)
  std::size_t min_count = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.05;  // decays linearly to 1e-4 of its start value
  std::uint64_t seed = 1;
  // 1 trains deterministically. More threads run lock-free updates on
  // shared tables and give up bit-reproducibility.
  std::size_t threads = 1;

  // Small model used by tests and the quick CLI path.
  static EmbedConfig desk_scale();

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens must already be in index order; counts align with tokens.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts);

  std::optional<std::size_t> index_of(std::string_view token) const;
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::uint64_t count(std::size_t index) const { return counts_.at(index); }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Tokens occurring at least `min_count` times, ordered by descending
// frequency with ties broken by byte-wise token order. Throws
// std::invalid_argument when nothing survives the cut.
Vocabulary build_vocab(std::span<const Sentence> corpus, std::size_t min_count);

struct EmbeddingModel {
  Vocabulary vocab;
  EmbedConfig config;
  std::vector<double> input_vectors;   // vocab.size() x dim, row-major
  std::vector<double> output_vectors;  // vocab.size() x dim, row-major
  std::vector<double> epoch_losses;    // mean loss per training example, per epoch

  std::size_t dim() const noexcept { return config.dim; }
  std::span<const double> input(std::size_t index) const;
  std::span<const double> output(std::size_t index) const;
};

// One CBOW training example: predict `target` from the mean of the input
// vectors of `context`, contrasted against `negatives`.
struct CbowExample {
  std::vector<std::size_t> context;
  std::size_t target = 0;
  std::vector<std::size_t> negatives;
};

// -log sigmoid(u_target . h) - sum_n log sigmoid(-u_n . h), with h the mean
// of the context input vectors. Tables are vocab x dim, row-major.
double cbow_loss(std::span<const double> input, std::span<const double> output, std::size_t dim,
                 const CbowExample& example);

struct CbowGradient {
  std::vector<double> input;   // same shape as the input table
  std::vector<double> output;  // same shape as the output table
};

// Exact gradient of cbow_loss with respect to both tables.
CbowGradient cbow_gradient(std::span<const double> input, std::span<const double> output, std::size_t dim,
                           const CbowExample& example);

// One SGD step, params -= learning_rate * gradient, applied in place.
// Returns the loss evaluated before the step.
double cbow_sgd_step(std::span<double> input, std::span<double> output, std::size_t dim,
                     const CbowExample& example, double learning_rate);

// Trains CBOW with negative sampling from the unigram^0.75 distribution.
// Throws std::invalid_argument for an empty vocabulary and
// std::runtime_error (naming epoch and step) on a non-finite loss.
EmbeddingModel train_cbow(std::span<const Sentence> corpus, const EmbedConfig& config);

// dot(a, b) / (|a| |b|) clamped to [-1, 1]. Throws std::domain_error for a
// zero vector or mismatched lengths.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct Neighbor {
  std::string token;
  double similarity;
};

// Top-k tokens by cosine similarity of input vectors, excluding the query;
// ties go to the lower vocabulary index. Throws std::out_of_range for an
// unknown token and std::invalid_argument for k == 0.
std::vector<Neighbor> nearest(const EmbeddingModel& model, std::string_view token, std::size_t k);

// Text format: "dim vocab_size" header, then one line per token:
// token, frequency, dim input-vector components. Numbers use the shortest
// round-trip representation, so load(save(m)) restores vectors exactly.
// The output table is not stored; a loaded model has it zero-filled.
void save_model(const EmbeddingModel& model, std::ostream& out);
EmbeddingModel load_model(std::istream& in, const std::string& source_name = "model");

}  // namespace skintone::embed

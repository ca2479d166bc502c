#include "skintone/embeddings.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "skintone/error.hpp"
#include "skintone/text_format.hpp"

namespace skintone::embed {

namespace {

constexpr double kUnigramPower = 0.75;
constexpr double kMinLearningRateFraction = 1e-4;
constexpr int kMaxNegativeRedraws = 16;

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Plain or relaxed-atomic access to a table element; the atomic form is
// used by the multi-threaded trainer.
template <bool Atomic>
struct Access {
  static double load(const double& x) {
    if constexpr (Atomic) {
      return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
    } else {
      return x;
    }
  }
  static void add(double& x, double delta) {
    if constexpr (Atomic) {
      std::atomic_ref<double> ref(x);
      ref.store(ref.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
    } else {
      x += delta;
    }
  }
};

struct Scratch {
  std::vector<double> hidden;
  std::vector<double> grad_hidden;
  std::vector<double> coefficients;
};

void check_example(std::size_t rows, const CbowExample& example) {
  if (example.context.empty()) throw std::invalid_argument("CBOW example has an empty context");
  auto in_range = [rows](std::size_t i) { return i < rows; };
  if (!in_range(example.target) || !std::all_of(example.context.begin(), example.context.end(), in_range) ||
      !std::all_of(example.negatives.begin(), example.negatives.end(), in_range))
    throw std::out_of_range("CBOW example index outside the vocabulary");
}

// Forward pass shared by the loss, the gradient and the SGD step. Fills
// scratch.hidden and scratch.coefficients (dL/d(u . h) per output row:
// target first, then negatives) and returns the loss.
template <bool Atomic>
double forward(const double* input, const double* output, std::size_t dim, const CbowExample& example,
               Scratch& scratch) {
  using A = Access<Atomic>;
  scratch.hidden.assign(dim, 0.0);
  for (std::size_t c : example.context)
    for (std::size_t k = 0; k < dim; ++k) scratch.hidden[k] += A::load(input[c * dim + k]);
  const double inv = 1.0 / static_cast<double>(example.context.size());
  for (double& h : scratch.hidden) h *= inv;

  scratch.coefficients.clear();
  double loss = 0.0;
  auto score = [&](std::size_t row) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += A::load(output[row * dim + k]) * scratch.hidden[k];
    return s;
  };
  const double st = score(example.target);
  loss += softplus(-st);
  scratch.coefficients.push_back(sigmoid(st) - 1.0);
  for (std::size_t n : example.negatives) {
    const double sn = score(n);
    loss += softplus(sn);
    scratch.coefficients.push_back(sigmoid(sn));
  }
  return loss;
}

// Adds scale * dL/dparams into the destination tables. Every coefficient
// and dL/dh comes from the source tables before any write, so with
// src == dst and scale = -lr this is an exact gradient-descent step even
// when negatives repeat.
template <bool Atomic>
double gradient_step(const double* input, const double* output, double* input_dst, double* output_dst,
                     std::size_t dim, const CbowExample& example, double scale, Scratch& scratch) {
  using A = Access<Atomic>;
  const double loss = forward<Atomic>(input, output, dim, example, scratch);

  scratch.grad_hidden.assign(dim, 0.0);
  auto rows = [&](std::size_t i) { return i == 0 ? example.target : example.negatives[i - 1]; };
  for (std::size_t i = 0; i < scratch.coefficients.size(); ++i) {
    const double* u = output + rows(i) * dim;
    for (std::size_t k = 0; k < dim; ++k) scratch.grad_hidden[k] += scratch.coefficients[i] * A::load(u[k]);
  }
  for (std::size_t i = 0; i < scratch.coefficients.size(); ++i) {
    double* u = output_dst + rows(i) * dim;
    const double g = scale * scratch.coefficients[i];
    for (std::size_t k = 0; k < dim; ++k) A::add(u[k], g * scratch.hidden[k]);
  }
  const double per_context = scale / static_cast<double>(example.context.size());
  for (std::size_t c : example.context) {
    double* v = input_dst + c * dim;
    for (std::size_t k = 0; k < dim; ++k) A::add(v[k], per_context * scratch.grad_hidden[k]);
  }
  return loss;
}

template <bool Atomic>
double sgd_step(double* input, double* output, std::size_t dim, const CbowExample& example, double lr,
                Scratch& scratch) {
  return gradient_step<Atomic>(input, output, input, output, dim, example, -lr, scratch);
}

class NegativeSampler {
 public:
  explicit NegativeSampler(const Vocabulary& vocab) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      total += std::pow(static_cast<double>(vocab.count(i)), kUnigramPower);
      cumulative_.push_back(total);
    }
    for (double& c : cumulative_) c /= total;
  }

  std::size_t draw(std::mt19937_64& rng) const {
    const double u = unit_uniform(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

struct TrainingState {
  std::vector<std::vector<std::size_t>> sentences;
  std::uint64_t total_positions = 0;
};

TrainingState index_corpus(std::span<const Sentence> corpus, const Vocabulary& vocab) {
  TrainingState state;
  for (const auto& sentence : corpus) {
    std::vector<std::size_t> ids;
    for (const auto& token : sentence)
      if (auto idx = vocab.index_of(token)) ids.push_back(*idx);
    if (ids.size() < 2) continue;
    state.total_positions += ids.size();
    state.sentences.push_back(std::move(ids));
  }
  return state;
}

struct EpochRange {
  std::size_t epoch;
  std::size_t first_sentence;
  std::size_t last_sentence;
};

// Runs one slice of one epoch. Returns (loss sum, example count).
template <bool Atomic>
std::pair<double, std::uint64_t> run_slice(EmbeddingModel& model, const TrainingState& state,
                                           const NegativeSampler& sampler, const EpochRange& range,
                                           std::mt19937_64& rng, std::atomic<std::uint64_t>& processed) {
  const auto& cfg = model.config;
  const std::size_t dim = cfg.dim;
  const double total_work = static_cast<double>(cfg.epochs * state.total_positions) + 1.0;
  Scratch scratch;
  CbowExample example;
  double loss_sum = 0.0;
  std::uint64_t examples = 0;

  for (std::size_t s = range.first_sentence; s < range.last_sentence; ++s) {
    const auto& ids = state.sentences[s];
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
      const double done = static_cast<double>(processed.fetch_add(1, std::memory_order_relaxed));
      const double lr = cfg.learning_rate * std::max(kMinLearningRateFraction, 1.0 - done / total_work);

      example.context.clear();
      const std::size_t lo = pos >= cfg.window ? pos - cfg.window : 0;
      const std::size_t hi = std::min(ids.size(), pos + cfg.window + 1);
      for (std::size_t c = lo; c < hi; ++c)
        if (c != pos) example.context.push_back(ids[c]);
      if (example.context.empty()) continue;
      example.target = ids[pos];
      example.negatives.clear();
      for (std::size_t n = 0; n < cfg.negatives; ++n) {
        for (int attempt = 0; attempt < kMaxNegativeRedraws; ++attempt) {
          const std::size_t neg = sampler.draw(rng);
          if (neg != example.target) {
            example.negatives.push_back(neg);
            break;
          }
        }
      }

      const double loss = sgd_step<Atomic>(model.input_vectors.data(), model.output_vectors.data(), dim, example,
                                           lr, scratch);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "train_cbow: non-finite loss at epoch " << range.epoch + 1 << ", step " << examples + 1
            << " of sentence " << s;
        throw std::runtime_error(msg.str());
      }
      loss_sum += loss;
      ++examples;
    }
  }
  return {loss_sum, examples};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

EmbedConfig EmbedConfig::desk_scale() {
  EmbedConfig cfg;
  cfg.dim = 16;
  cfg.window = 5;
  cfg.min_count = 1;
  cfg.negatives = 5;
  cfg.epochs = 15;
  cfg.learning_rate = 0.05;
  return cfg;
}

void EmbedConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw std::invalid_argument("learning_rate must be > 0");
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts)
    : tokens_(std::move(tokens)), counts_(std::move(counts)) {
  if (tokens_.size() != counts_.size()) throw std::invalid_argument("vocabulary tokens and counts differ in length");
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (!index_.emplace(tokens_[i], i).second) throw std::invalid_argument("duplicate vocabulary token " + tokens_[i]);
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocab(std::span<const Sentence> corpus, std::size_t min_count) {
  std::map<std::string, std::uint64_t> freq;
  for (const auto& sentence : corpus)
    for (const auto& token : sentence) ++freq[token];

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : freq)
    if (count >= min_count) kept.emplace_back(token, count);
  if (kept.empty()) throw std::invalid_argument("build_vocab: no token reaches min_count");
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  for (auto& [token, count] : kept) {
    tokens.push_back(std::move(token));
    counts.push_back(count);
  }
  return Vocabulary(std::move(tokens), std::move(counts));
}

std::span<const double> EmbeddingModel::input(std::size_t index) const {
  return std::span<const double>(input_vectors).subspan(index * dim(), dim());
}

std::span<const double> EmbeddingModel::output(std::size_t index) const {
  return std::span<const double>(output_vectors).subspan(index * dim(), dim());
}

double cbow_loss(std::span<const double> input, std::span<const double> output, std::size_t dim,
                 const CbowExample& example) {
  check_example(input.size() / dim, example);
  Scratch scratch;
  return forward<false>(input.data(), output.data(), dim, example, scratch);
}

CbowGradient cbow_gradient(std::span<const double> input, std::span<const double> output, std::size_t dim,
                           const CbowExample& example) {
  check_example(input.size() / dim, example);
  CbowGradient grad{std::vector<double>(input.size(), 0.0), std::vector<double>(output.size(), 0.0)};
  Scratch scratch;
  gradient_step<false>(input.data(), output.data(), grad.input.data(), grad.output.data(), dim, example, 1.0,
                       scratch);
  return grad;
}

double cbow_sgd_step(std::span<double> input, std::span<double> output, std::size_t dim, const CbowExample& example,
                     double learning_rate) {
  check_example(input.size() / dim, example);
  Scratch scratch;
  return sgd_step<false>(input.data(), output.data(), dim, example, learning_rate, scratch);
}

EmbeddingModel train_cbow(std::span<const Sentence> corpus, const EmbedConfig& config) {
  config.validate();
  if (corpus.empty()) throw std::invalid_argument("train_cbow: empty corpus");

  EmbeddingModel model;
  model.config = config;
  model.vocab = build_vocab(corpus, config.min_count);
  const std::size_t rows = model.vocab.size();
  model.input_vectors.resize(rows * config.dim);
  model.output_vectors.assign(rows * config.dim, 0.0);

  std::mt19937_64 init_rng(mix_seed(config.seed, 0));
  for (double& v : model.input_vectors) v = (unit_uniform(init_rng) - 0.5) / static_cast<double>(config.dim);

  const TrainingState state = index_corpus(corpus, model.vocab);
  const NegativeSampler sampler(model.vocab);
  std::atomic<std::uint64_t> processed{0};

  if (config.threads == 1) {
    std::mt19937_64 rng(mix_seed(config.seed, 1));
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      auto [loss, n] = run_slice<false>(model, state, sampler, {epoch, 0, state.sentences.size()}, rng, processed);
      model.epoch_losses.push_back(n ? loss / static_cast<double>(n) : 0.0);
    }
    return model;
  }

  const std::size_t workers = std::min(config.threads, std::max<std::size_t>(1, state.sentences.size()));
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<std::pair<double, std::uint64_t>> results(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            std::mt19937_64 rng(mix_seed(config.seed, 1 + epoch * workers + w));
            const std::size_t first = state.sentences.size() * w / workers;
            const std::size_t last = state.sentences.size() * (w + 1) / workers;
            results[w] = run_slice<true>(model, state, sampler, {epoch, first, last}, rng, processed);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    double loss = 0.0;
    std::uint64_t n = 0;
    for (const auto& [l, c] : results) {
      loss += l;
      n += c;
    }
    model.epoch_losses.push_back(n ? loss / static_cast<double>(n) : 0.0);
  }
  return model;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::domain_error("cosine_similarity: length mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw std::domain_error("cosine_similarity: zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<Neighbor> nearest(const EmbeddingModel& model, std::string_view token, std::size_t k) {
  if (k == 0) throw std::invalid_argument("nearest: k must be >= 1");
  const auto query = model.vocab.index_of(token);
  if (!query) throw std::out_of_range("nearest: token not in vocabulary: " + std::string(token));

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(model.vocab.size());
  const auto q = model.input(*query);
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    if (i == *query) continue;
    scored.emplace_back(cosine_similarity(q, model.input(i)), i);
  }
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({model.vocab.token(scored[i].second), scored[i].first});
  return out;
}

void save_model(const EmbeddingModel& model, std::ostream& out) {
  out << model.dim() << ' ' << model.vocab.size() << '\n';
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    out << model.vocab.token(i) << ' ' << model.vocab.count(i);
    for (double v : model.input(i)) out << ' ' << format_roundtrip(v);
    out << '\n';
  }
}

EmbeddingModel load_model(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source_name, line_no, "missing header");
  std::istringstream header(line);
  std::size_t dim = 0;
  std::size_t rows = 0;
  if (!(header >> dim >> rows) || dim == 0) throw ParseError(source_name, line_no, "expected 'dim vocab_size'");

  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::vector<double> vectors;
  vectors.reserve(rows * dim);
  while (tokens.size() < rows && std::getline(in, line)) {
    ++line_no;
    std::vector<std::string_view> fields;
    std::string_view view = line;
    while (!view.empty()) {
      const auto start = view.find_first_not_of(' ');
      if (start == std::string_view::npos) break;
      view.remove_prefix(start);
      const auto end = view.find(' ');
      fields.push_back(view.substr(0, end));
      view.remove_prefix(end == std::string_view::npos ? view.size() : end);
    }
    if (fields.size() != dim + 2) throw ParseError(source_name, line_no, "expected token, frequency and " + std::to_string(dim) + " components");
    tokens.emplace_back(fields[0]);
    std::uint64_t count = 0;
    if (std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), count).ec != std::errc{})
      throw ParseError(source_name, line_no, "malformed frequency");
    counts.push_back(count);
    for (std::size_t k = 0; k < dim; ++k) {
      double v = 0.0;
      const auto f = fields[k + 2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size()) throw ParseError(source_name, line_no, "malformed vector component");
      vectors.push_back(v);
    }
  }
  if (tokens.size() != rows) throw ParseError(source_name, line_no, "fewer rows than the header declares");

  EmbeddingModel model;
  model.config.dim = dim;
  model.config.min_count = counts.empty() ? 1 : std::max<std::uint64_t>(1, *std::min_element(counts.begin(), counts.end()));
  model.vocab = Vocabulary(std::move(tokens), std::move(counts));
  model.input_vectors = std::move(vectors);
  model.output_vectors.assign(model.input_vectors.size(), 0.0);
  return model;
}

}  // namespace skintone::embed

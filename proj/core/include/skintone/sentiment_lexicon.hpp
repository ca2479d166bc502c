#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skintone/emoji_catalog.hpp"
#include "skintone/emoji_scanner.hpp"

namespace skintone {

inline constexpr std::uint64_t kDefaultMinOccurrences = 50;

struct LexiconEntry {
  CodeSequence emoji;
  std::uint64_t n_neg = 0;
  std::uint64_t n_neut = 0;
  std::uint64_t n_pos = 0;

  std::uint64_t total() const noexcept { return n_neg + n_neut + n_pos; }
};

// (positive - negative) / total, in [-1, 1]. Throws std::domain_error when
// the entry has no occurrences.
double emoji_score(const LexiconEntry& entry);

enum class Aggregation { Sum, Mean };

std::string_view to_string(Aggregation aggregation);
std::optional<Aggregation> parse_aggregation(std::string_view text);

class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  // Keeps entries with total() >= min_occurrences. Throws
  // std::invalid_argument on duplicate keys.
  SentimentLexicon(std::vector<LexiconEntry> entries, std::uint64_t min_occurrences);

  const LexiconEntry* find(std::u32string_view emoji) const;
  std::optional<double> score(std::u32string_view emoji) const;

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t min_occurrences() const noexcept { return min_occurrences_; }

  // Retained entries ordered by code point sequence.
  std::vector<LexiconEntry> sorted_entries() const;

 private:
  struct Scored {
    LexiconEntry entry;
    double score;
  };
  std::unordered_map<CodeSequence, Scored> entries_;
  std::uint64_t min_occurrences_ = kDefaultMinOccurrences;
};

// CSV with header `emoji_hex,n_neg,n_neut,n_pos`. Duplicate keys, negative or
// malformed counts are errors reported with their line number.
SentimentLexicon parse_lexicon(std::istream& in, const std::string& source_name,
                               std::uint64_t min_occurrences = kDefaultMinOccurrences);
SentimentLexicon load_lexicon(const std::filesystem::path& path,
                              std::uint64_t min_occurrences = kDefaultMinOccurrences);

std::filesystem::path default_lexicon_path();

// Sum (or mean) of emoji scores over the tokens whose base is in the
// lexicon. Tone modifiers never affect the lookup. Returns nullopt when no
// token is scoreable.
std::optional<double> tweet_sentiment(const SentimentLexicon& lexicon, std::span<const EmojiToken> tokens,
                                      Aggregation aggregation = Aggregation::Sum);

}  // namespace skintone

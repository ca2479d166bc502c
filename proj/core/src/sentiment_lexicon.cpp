#include "skintone/sentiment_lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <unordered_set>

#include "skintone/error.hpp"

namespace skintone {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view field, const std::string& source, std::size_t line_no) {
  if (!field.empty() && field.front() == '-')
    throw ParseError(source, line_no, "negative count '" + std::string(field) + "'");
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, 10);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError(source, line_no, "malformed count '" + std::string(field) + "'");
  return value;
}

}  // namespace

double emoji_score(const LexiconEntry& entry) {
  const auto total = entry.total();
  if (total == 0) throw std::domain_error("emoji_score: entry has zero occurrences");
  return (static_cast<double>(entry.n_pos) - static_cast<double>(entry.n_neg)) / static_cast<double>(total);
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::Sum ? "sum" : "mean";
}

std::optional<Aggregation> parse_aggregation(std::string_view text) {
  if (text == "sum") return Aggregation::Sum;
  if (text == "mean") return Aggregation::Mean;
  return std::nullopt;
}

SentimentLexicon::SentimentLexicon(std::vector<LexiconEntry> entries, std::uint64_t min_occurrences)
    : min_occurrences_(min_occurrences) {
  std::unordered_set<CodeSequence> seen;
  for (auto& entry : entries) {
    std::erase(entry.emoji, kVariationSelector16);
    if (!seen.insert(entry.emoji).second)
      throw std::invalid_argument("duplicate lexicon entry " + to_hex(entry.emoji));
    if (entry.total() == 0 || entry.total() < min_occurrences) continue;
    const double score = emoji_score(entry);
    auto key = entry.emoji;
    entries_.emplace(std::move(key), Scored{std::move(entry), score});
  }
}

const LexiconEntry* SentimentLexicon::find(std::u32string_view emoji) const {
  const auto it = entries_.find(CodeSequence(emoji));
  return it == entries_.end() ? nullptr : &it->second.entry;
}

std::optional<double> SentimentLexicon::score(std::u32string_view emoji) const {
  const auto it = entries_.find(CodeSequence(emoji));
  if (it == entries_.end()) return std::nullopt;
  return it->second.score;
}

std::vector<LexiconEntry> SentimentLexicon::sorted_entries() const {
  std::vector<LexiconEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, scored] : entries_) out.push_back(scored.entry);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.emoji < b.emoji; });
  return out;
}

SentimentLexicon parse_lexicon(std::istream& in, const std::string& source_name, std::uint64_t min_occurrences) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (line != "emoji_hex,n_neg,n_neut,n_pos")
    throw ParseError(source_name, line_no, "expected header 'emoji_hex,n_neg,n_neut,n_pos'");

  std::vector<LexiconEntry> entries;
  std::unordered_set<CodeSequence> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 4) throw ParseError(source_name, line_no, "expected 4 fields");
    auto emoji = parse_hex_sequence(fields[0]);
    if (!emoji) throw ParseError(source_name, line_no, "malformed emoji_hex '" + std::string(fields[0]) + "'");
    std::erase(*emoji, kVariationSelector16);
    if (emoji->empty() || !seen.insert(*emoji).second)
      throw ParseError(source_name, line_no, "duplicate emoji " + std::string(fields[0]));
    entries.push_back({std::move(*emoji), parse_count(fields[1], source_name, line_no),
                       parse_count(fields[2], source_name, line_no), parse_count(fields[3], source_name, line_no)});
  }
  if (in.bad()) throw IoError("read failure: " + source_name);
  return SentimentLexicon(std::move(entries), min_occurrences);
}

SentimentLexicon load_lexicon(const std::filesystem::path& path, std::uint64_t min_occurrences) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path.string());
  return parse_lexicon(in, path.string(), min_occurrences);
}

std::filesystem::path default_lexicon_path() { return default_data_dir() / "emoji_sentiment.csv"; }

std::optional<double> tweet_sentiment(const SentimentLexicon& lexicon, std::span<const EmojiToken> tokens,
                                      Aggregation aggregation) {
  double sum = 0.0;
  std::size_t scored = 0;
  for (const auto& token : tokens) {
    if (auto s = lexicon.score(token.base)) {
      sum += *s;
      ++scored;
    }
  }
  if (scored == 0) return std::nullopt;
  return aggregation == Aggregation::Sum ? sum : sum / static_cast<double>(scored);
}

}  // namespace skintone

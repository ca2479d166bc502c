#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/record.hpp"

namespace skintone {

struct IngestStats {
  std::uint64_t total_lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t malformed = 0;  // blank, invalid JSON, or missing id/text

  IngestStats& operator+=(const IngestStats& other) {
    total_lines += other.total_lines;
    parsed += other.parsed;
    malformed += other.malformed;
    return *this;
  }
};

struct IngestResult {
  std::vector<TweetRecord> records;
  IngestStats stats;
};

// Thrown when more than half of the lines in an input are malformed.
class MalformedInputError : public std::runtime_error {
 public:
  MalformedInputError(const std::string& source, const IngestStats& stats);
  const IngestStats& stats() const noexcept { return stats_; }

 private:
  IngestStats stats_;
};

// Parses one NDJSON line: an object with string `id` (numbers accepted) and
// `text`, optional `lang`, `country`, `created_at`. Empty country becomes
// "??". Returns nullopt for anything malformed.
std::optional<TweetRecord> parse_record(std::string_view line);

IngestResult ingest(std::istream& in, const std::string& source_name);
IngestResult ingest(const std::filesystem::path& path);
IngestResult ingest_all(std::span<const std::filesystem::path> paths);

// Writes records as NDJSON, one object per line, keys in a fixed order.
void write_ndjson(std::ostream& out, std::span<const TweetRecord> records);

}  // namespace skintone

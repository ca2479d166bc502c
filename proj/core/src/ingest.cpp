#include "skintone/ingest.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "skintone/error.hpp"

namespace skintone {

namespace {

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::string{};
  if (!it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

MalformedInputError::MalformedInputError(const std::string& source, const IngestStats& stats)
    : std::runtime_error(source + ": " + std::to_string(stats.malformed) + " of " + std::to_string(stats.total_lines) +
                         " lines malformed (more than half); aborting"),
      stats_(stats) {}

std::optional<TweetRecord> parse_record(std::string_view line) {
  auto obj = nlohmann::json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) return std::nullopt;

  TweetRecord rec;
  const auto id = obj.find("id");
  if (id == obj.end()) return std::nullopt;
  if (id->is_string()) {
    rec.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    rec.id = id->dump();
  } else {
    return std::nullopt;
  }
  if (rec.id.empty()) return std::nullopt;

  const auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) return std::nullopt;
  rec.text = text->get<std::string>();

  auto lang = optional_string(obj, "lang");
  auto country = optional_string(obj, "country");
  auto created = optional_string(obj, "created_at");
  if (!lang || !country || !created) return std::nullopt;
  rec.lang = std::move(*lang);
  rec.country = country->empty() ? std::string(kUnknownCountry) : std::move(*country);
  rec.created_at = std::move(*created);
  return rec;
}

IngestResult ingest(std::istream& in, const std::string& source_name) {
  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    ++result.stats.total_lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto rec = parse_record(line)) {
      result.records.push_back(std::move(*rec));
      ++result.stats.parsed;
    } else {
      ++result.stats.malformed;
    }
  }
  if (in.bad()) throw IoError("read failure: " + source_name);
  if (result.stats.malformed * 2 > result.stats.total_lines) throw MalformedInputError(source_name, result.stats);
  return result;
}

IngestResult ingest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path.string());
  return ingest(in, path.string());
}

IngestResult ingest_all(std::span<const std::filesystem::path> paths) {
  IngestResult all;
  for (const auto& path : paths) {
    auto part = ingest(path);
    all.stats += part.stats;
    all.records.insert(all.records.end(), std::make_move_iterator(part.records.begin()),
                       std::make_move_iterator(part.records.end()));
  }
  return all;
}

void write_ndjson(std::ostream& out, std::span<const TweetRecord> records) {
  for (const auto& rec : records) {
    nlohmann::ordered_json obj;
    obj["id"] = rec.id;
    obj["text"] = rec.text;
    if (!rec.lang.empty()) obj["lang"] = rec.lang;
    if (!rec.country.empty() && rec.country != kUnknownCountry) obj["country"] = rec.country;
    if (!rec.created_at.empty()) obj["created_at"] = rec.created_at;
    out << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

}  // namespace skintone

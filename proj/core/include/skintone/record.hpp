#pragma once

#include <string>
#include <string_view>

namespace skintone {

// Country key for records without a resolvable country.
inline constexpr std::string_view kUnknownCountry = "??";

struct TweetRecord {
  std::string id;
  std::string text;
  std::string lang;
  std::string country;  // ISO-3166 alpha-2, or "??"
  std::string created_at;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

inline std::string_view country_key(const TweetRecord& record) {
  return record.country.empty() ? kUnknownCountry : std::string_view(record.country);
}

}  // namespace skintone

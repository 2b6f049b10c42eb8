#include "egorank/labels.hpp"

#include "text_util.hpp"

namespace egorank {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kTechnology: return "Technology";
    case Category::kPolitics: return "Politics";
    case Category::kSports: return "Sports";
    case Category::kBusiness: return "Business";
    case Category::kEntertainment: return "Entertainment";
  }
  return "?";
}

std::string_view to_string(Sentiment s) {
  return s == Sentiment::kPositive ? "Positive" : "Negative";
}

std::optional<Category> parse_category(std::string_view name) {
  for (Category c : kAllCategories) {
    if (detail::iequals(name, to_string(c))) return c;
  }
  return std::nullopt;
}

std::optional<Sentiment> parse_sentiment(std::string_view name) {
  for (Sentiment s : kAllSentiments) {
    if (detail::iequals(name, to_string(s))) return s;
  }
  return std::nullopt;
}

std::string to_string(const Bucket& b) {
  std::string out(to_string(b.category));
  out += '/';
  out += to_string(b.sentiment);
  return out;
}

std::array<Bucket, kBucketCount> all_buckets() {
  std::array<Bucket, kBucketCount> out{};
  std::size_t i = 0;
  for (Category c : kAllCategories) {
    for (Sentiment s : kAllSentiments) out[i++] = Bucket{c, s};
  }
  return out;
}

}  // namespace egorank

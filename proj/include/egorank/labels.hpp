#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace egorank {

// Declaration order is the argmax tie-break order.
enum class Category { kTechnology, kPolitics, kSports, kBusiness, kEntertainment };
enum class Sentiment { kPositive, kNegative };

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::kTechnology, Category::kPolitics, Category::kSports,
    Category::kBusiness, Category::kEntertainment};
inline constexpr std::array<Sentiment, 2> kAllSentiments = {
    Sentiment::kPositive, Sentiment::kNegative};

std::string_view to_string(Category c);
std::string_view to_string(Sentiment s);
// Case-insensitive.
std::optional<Category> parse_category(std::string_view name);
std::optional<Sentiment> parse_sentiment(std::string_view name);

// One of the ten (category, sentiment) influence classes.
struct Bucket {
  Category category = Category::kTechnology;
  Sentiment sentiment = Sentiment::kPositive;

  friend auto operator<=>(const Bucket&, const Bucket&) = default;
};

inline constexpr std::size_t kBucketCount = 10;

std::string to_string(const Bucket& b);  // "Politics/Positive"
std::array<Bucket, kBucketCount> all_buckets();

}  // namespace egorank

#pragma once

// Data model for the nine activity datasets of one ego network, plus CSV
// ingestion and serialization.
//
// Datasets 1-4 belong to the ego (posts, share-texts, comments, messages),
// Dataset 5 is the interacted-member list, and 6-9 mirror 1-4 for members.
// Share-texts and comments (2, 3, 7, 8) always point at a parent post of the
// same owner in Dataset 1 or 6.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egorank {

enum class Platform { kFacebook, kTwitter, kLinkedIn };
enum class ActivityType { kPost, kReact, kComment, kTag, kShare, kMessage };
enum class MemberKind { kFriend, kFollower, kFollowing, kConnection, kPage, kGroup };

std::string_view to_string(Platform p);
std::string_view to_string(ActivityType a);
std::string_view to_string(MemberKind k);
std::optional<Platform> parse_platform(std::string_view s);
std::optional<ActivityType> parse_activity_type(std::string_view s);
std::optional<MemberKind> parse_member_kind(std::string_view s);

using Timestamp = std::chrono::sys_seconds;

// Strict ISO-8601 UTC, "YYYY-MM-DDTHH:MM:SSZ".
std::optional<Timestamp> parse_timestamp(std::string_view s);
std::string format_timestamp(Timestamp t);

struct TimeWindow {
  Timestamp since = Timestamp::min();
  Timestamp until = Timestamp::max();

  bool contains(Timestamp t) const { return since <= t && t <= until; }
  static TimeWindow unbounded() { return {}; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

constexpr bool is_ego_dataset(int n) { return n >= 1 && n <= 4; }
constexpr bool is_member_dataset(int n) { return n >= 6 && n <= 9; }
constexpr bool is_dependent_dataset(int n) { return n == 2 || n == 3 || n == 7 || n == 8; }
constexpr bool is_content_dataset(int n) { return is_ego_dataset(n) || is_member_dataset(n); }
// Dataset holding the parents of a dependent dataset (2,3 -> 1; 7,8 -> 6).
constexpr int parent_dataset(int n) { return n <= 4 ? 1 : 6; }
ActivityType default_activity(int dataset_no);

// One row of an activity CSV.
struct ActivityRecord {
  std::string post_id;
  std::string content;
  std::string user_name;
  std::string user_id;
  std::uint64_t react_count = 0;
  std::uint64_t share_count = 0;
  std::string language = "und";
  Timestamp time{};
  std::string parent_post_id;  // empty unless the dataset is dependent
  // Post ids of comments on this record, filled by link_comment_threads().
  std::vector<std::string> comment_thread;

  friend bool operator==(const ActivityRecord&, const ActivityRecord&) = default;
};

struct Document {
  std::string doc_id;  // "<owner>:d<dataset>:<post_id>", unique per corpus
  std::string owner_id;
  std::string text;
  int dataset_no = 1;
  ActivityType activity_type = ActivityType::kPost;
  std::optional<std::string> parent_doc_id;
  Timestamp time{};
  ActivityRecord source;

  friend bool operator==(const Document&, const Document&) = default;
};

std::string make_doc_id(std::string_view owner_id, int dataset_no, std::string_view post_id);

struct InteractedMember {
  std::string member_id;
  std::string display_name;
  MemberKind kind = MemberKind::kFriend;
  std::set<ActivityType> activity_types;
  std::optional<std::uint64_t> connections_count;

  friend bool operator==(const InteractedMember&, const InteractedMember&) = default;
};

struct Corpus {
  Platform platform = Platform::kTwitter;
  std::string ego_id;
  std::map<int, std::vector<Document>> datasets;  // keys 1..4, 6..9
  std::vector<InteractedMember> members;           // Dataset 5, as loaded
  TimeWindow window;

  std::size_t document_count() const;
  // All content documents ordered by (dataset, file order).
  std::vector<const Document*> all_documents() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

inline constexpr std::string_view kActivityHeader =
    "post_id,content,user_name,user_id,react_count,share_count,language,time,parent_post_id";
inline constexpr std::string_view kMembersHeader =
    "member_id,display_name,kind,activity_types,connections_count";

// Reads one activity CSV. Rows outside `window` are dropped. `activity`
// defaults to the dataset's natural type (Post, Share, Comment, Message).
std::vector<Document> load_activity_csv(const std::filesystem::path& path, int dataset_no,
                                        const std::string& owner_id,
                                        const TimeWindow& window = TimeWindow::unbounded(),
                                        std::optional<ActivityType> activity = std::nullopt);
std::vector<Document> read_activity_csv(std::istream& in, int dataset_no,
                                        const std::string& owner_id, const TimeWindow& window,
                                        std::optional<ActivityType> activity,
                                        const std::string& source_name);

void write_activity_csv(std::ostream& out, std::span<const Document> docs);
void write_activity_csv(const std::filesystem::path& path, std::span<const Document> docs);

// Dataset 5 rows as written: one member may appear on several rows.
std::vector<InteractedMember> load_members_csv(const std::filesystem::path& path);
std::vector<InteractedMember> read_members_csv(std::istream& in, const std::string& source_name);
void write_members_csv(std::ostream& out, std::span<const InteractedMember> members);
void write_members_csv(const std::filesystem::path& path, std::span<const InteractedMember> members);

// Kind given to members that are known only through an @mention.
MemberKind default_member_kind(Platform p);

struct InteractionList {
  std::vector<InteractedMember> members;  // sorted by member_id
  std::vector<std::string> warnings;
};

// Deduplicates Dataset 5 by member_id, unioning activity types, and merges
// @mentions (matched on member_id, then case-insensitively on display name).
// Duplicate rows resolve kind to the lowest enum value, connections to the
// largest known count and display name to the smallest non-empty one, so
// the result does not depend on row order.
InteractionList build_interaction_list(const Corpus& corpus,
                                       std::span<const std::string> mentions = {});

// Fills ActivityRecord::comment_thread of every parent post from the
// dependent datasets of the same owner.
void link_comment_threads(Corpus& corpus);

// On-disk layout of one ego network:
//   <root>/ego/dataset{1..4}[_<activity>].csv
//   <root>/dataset5.csv
//   <root>/members/<member_id>/dataset{6..9}[_<activity>].csv
struct CorpusLayout {
  std::filesystem::path root;
  std::optional<std::filesystem::path> dataset5;  // overrides <root>/dataset5.csv
  std::optional<std::filesystem::path> ego_dir;
  std::optional<std::filesystem::path> members_dir;

  std::filesystem::path dataset5_path() const;
  std::filesystem::path ego_path() const;
  std::filesystem::path members_path() const;
};

struct LoadedCorpus {
  Corpus corpus;
  std::vector<std::string> warnings;
};

// Loads a whole corpus. Dataset 5 must exist (MissingDataset otherwise);
// missing ego or member files count as empty datasets. Member folders not
// listed in Dataset 5 are skipped with a warning.
LoadedCorpus load_corpus(const CorpusLayout& layout, Platform platform, const std::string& ego_id,
                         const TimeWindow& window = TimeWindow::unbounded());

// Writes `corpus` in the layout above; reloading it yields an equal corpus.
void save_corpus(const Corpus& corpus, const std::filesystem::path& root);

}  // namespace egorank

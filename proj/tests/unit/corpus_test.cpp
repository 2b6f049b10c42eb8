#include <algorithm>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "egorank/corpus.hpp"
#include "egorank/error.hpp"
#include "support/temp_dir.hpp"

namespace egorank {
namespace {

const std::string kHeader = std::string(kActivityHeader) + "\n";

std::vector<Document> read(const std::string& csv, int dataset_no = 1,
                           const TimeWindow& window = TimeWindow::unbounded()) {
  std::istringstream in(csv);
  return read_activity_csv(in, dataset_no, "ego", window, std::nullopt, "test.csv");
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kBadConfig;
}

TEST(Timestamp, RoundTripsStrictIso) {
  auto t = parse_timestamp("2023-04-05T06:07:08Z");
  ASSERT_TRUE(t);
  EXPECT_EQ(format_timestamp(*t), "2023-04-05T06:07:08Z");
  EXPECT_FALSE(parse_timestamp("2023-04-05 06:07:08"));
  EXPECT_FALSE(parse_timestamp("2023-13-05T06:07:08Z"));
  EXPECT_FALSE(parse_timestamp("2023-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_timestamp(""));
}

TEST(LoadActivityCsv, MapsFieldsDirectly) {
  auto docs = read(kHeader + "p1,hello world,Ego,ego,3,1,en,2023-01-01T00:00:00Z,\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].text, "hello world");
  EXPECT_EQ(docs[0].doc_id, make_doc_id("ego", 1, "p1"));
  EXPECT_EQ(docs[0].source.react_count, 3u);
  EXPECT_EQ(docs[0].activity_type, ActivityType::kPost);
  EXPECT_FALSE(docs[0].parent_doc_id);
}

TEST(LoadActivityCsv, QuotedFieldsKeepCommasAndNewlines) {
  auto docs = read(kHeader + "p1,\"a, \"\"b\"\"\nc\",Ego,ego,0,0,en,2023-01-01T00:00:00Z,\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].text, "a, \"b\"\nc");
}

TEST(LoadActivityCsv, WindowDropsRowsOutside) {
  TimeWindow w{*parse_timestamp("2023-01-01T00:00:00Z"), *parse_timestamp("2023-12-31T23:59:59Z")};
  auto docs = read(kHeader +
                       "p1,a,E,ego,0,0,en,2023-03-01T00:00:00Z,\n"
                       "p2,b,E,ego,0,0,en,2022-12-31T23:59:59Z,\n"
                       "p3,c,E,ego,0,0,en,2023-12-31T23:59:59Z,\n",
                   1, w);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].source.post_id, "p1");
  EXPECT_EQ(docs[1].source.post_id, "p3");
}

TEST(LoadActivityCsv, RowMissingUserIdIsBadRow) {
  EXPECT_EQ(code_of([] { read(kHeader + "p1,hello,E,,0,0,en,2023-01-01T00:00:00Z,\n"); }),
            ErrorCode::kBadRow);
  EXPECT_EQ(code_of([] { read(kHeader + "p1,hello,E,ego,0\n"); }), ErrorCode::kBadRow);
}

TEST(LoadActivityCsv, Errors) {
  EXPECT_EQ(code_of([] { read(""); }), ErrorCode::kEmptyFile);
  EXPECT_EQ(code_of([] { read("post_id,content\n"); }), ErrorCode::kMissingColumn);
  EXPECT_EQ(code_of([] { read(kHeader + "p1,a,E,ego,0,0,en,yesterday,\n"); }), ErrorCode::kBadTimestamp);
  EXPECT_EQ(code_of([] { read(kHeader + "p1,a,E,ego,-1,0,en,2023-01-01T00:00:00Z,\n"); }),
            ErrorCode::kBadRow);
  EXPECT_EQ(code_of([] {
              read(kHeader + "p1,a,E,ego,0,0,en,2023-01-01T00:00:00Z,\np1,b,E,ego,0,0,en,2023-01-01T00:00:00Z,\n");
            }),
            ErrorCode::kBadRow);
}

TEST(LoadActivityCsv, DependentDatasetsNeedParent) {
  auto docs = read(kHeader + "c1,nice,E,ego,0,0,en,2023-01-01T00:00:00Z,p9\n", 3);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].parent_doc_id, make_doc_id("ego", 1, "p9"));
  EXPECT_EQ(docs[0].activity_type, ActivityType::kComment);
  EXPECT_EQ(code_of([] { read(kHeader + "c1,nice,E,ego,0,0,en,2023-01-01T00:00:00Z,\n", 3); }),
            ErrorCode::kBadRow);
  EXPECT_EQ(code_of([] { read(kHeader + "p1,nice,E,ego,0,0,en,2023-01-01T00:00:00Z,p9\n", 1); }),
            ErrorCode::kBadRow);
}

TEST(LoadActivityCsv, WriteReadRoundTrip) {
  auto docs = read(kHeader +
                   "p1,\"x, y\",E,ego,1,2,en,2023-01-01T00:00:00Z,\n"
                   "p2,z,E,ego,0,0,und,2023-01-02T00:00:00Z,\n");
  std::ostringstream out;
  write_activity_csv(out, docs);
  EXPECT_EQ(read(out.str()), docs);
}

InteractedMember member(std::string id, MemberKind kind, std::set<ActivityType> acts,
                        std::optional<std::uint64_t> conns = std::nullopt, std::string name = "") {
  return {std::move(id), std::move(name), kind, std::move(acts), conns};
}

TEST(MembersCsv, ParsesActivityListAndCount) {
  std::istringstream in(std::string(kMembersHeader) + "\nm1,Alice,Friend,Post;Comment,120\nm2,G,Group,Tag,\n");
  auto m = read_members_csv(in, "d5");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].activity_types, (std::set{ActivityType::kPost, ActivityType::kComment}));
  EXPECT_EQ(m[0].connections_count, 120u);
  EXPECT_EQ(m[1].kind, MemberKind::kGroup);
  EXPECT_FALSE(m[1].connections_count);
}

TEST(MembersCsv, EmptyActivityListIsBadRow) {
  std::istringstream in(std::string(kMembersHeader) + "\nm1,Alice,Friend,,120\n");
  EXPECT_EQ(code_of([&] { read_members_csv(in, "d5"); }), ErrorCode::kBadRow);
}

TEST(InteractionList, DeduplicatesAndUnionsActivities) {
  Corpus c;
  c.members = {member("b", MemberKind::kFollower, {ActivityType::kReact}, 10, "Bee"),
               member("a", MemberKind::kFriend, {ActivityType::kPost}),
               member("b", MemberKind::kFriend, {ActivityType::kShare}, 30)};
  auto list = build_interaction_list(c);
  ASSERT_EQ(list.members.size(), 2u);
  EXPECT_EQ(list.members[0].member_id, "a");
  const auto& b = list.members[1];
  EXPECT_EQ(b.activity_types, (std::set{ActivityType::kReact, ActivityType::kShare}));
  EXPECT_EQ(b.kind, MemberKind::kFriend);
  EXPECT_EQ(b.connections_count, 30u);
  EXPECT_TRUE(list.warnings.empty());
}

TEST(InteractionList, RowOrderDoesNotMatter) {
  Corpus c;
  c.members = {member("b", MemberKind::kFollower, {ActivityType::kReact}, 10, "Zed"),
               member("b", MemberKind::kPage, {ActivityType::kShare}, std::nullopt, "Bee"),
               member("a", MemberKind::kFriend, {ActivityType::kPost})};
  auto forward = build_interaction_list(c);
  std::reverse(c.members.begin(), c.members.end());
  EXPECT_EQ(build_interaction_list(c).members, forward.members);
}

TEST(InteractionList, MergesMentions) {
  Corpus c;
  c.platform = Platform::kLinkedIn;
  c.members = {member("m1", MemberKind::kConnection, {ActivityType::kPost}, std::nullopt, "Alice")};
  std::vector<std::string> mentions = {"alice", "newbie", "m1"};
  auto list = build_interaction_list(c, mentions);
  ASSERT_EQ(list.members.size(), 2u);
  EXPECT_TRUE(list.members[0].activity_types.count(ActivityType::kTag));
  EXPECT_EQ(list.members[1].member_id, "newbie");
  EXPECT_EQ(list.members[1].kind, MemberKind::kConnection);
}

TEST(InteractionList, EmptyDataset5Warns) {
  Corpus c;
  auto list = build_interaction_list(c);
  EXPECT_TRUE(list.members.empty());
  EXPECT_EQ(list.warnings.size(), 1u);
}

TEST(CorpusFiles, SaveLoadRoundTrip) {
  testing::TempDir dir;
  Corpus c;
  c.platform = Platform::kFacebook;
  c.ego_id = "ego";
  c.members = {member("m1", MemberKind::kFriend, {ActivityType::kPost}, 5)};
  c.datasets[1] = read(kHeader + "p1,hello,E,ego,0,0,en,2023-01-01T00:00:00Z,\n");
  c.datasets[3] = read(kHeader + "c1,hi,E,ego,0,0,en,2023-01-02T00:00:00Z,p1\n", 3);
  std::istringstream m(kHeader + "q1,yo,M,m1,0,0,en,2023-01-03T00:00:00Z,\n");
  c.datasets[6] = read_activity_csv(m, 6, "m1", TimeWindow::unbounded(), std::nullopt, "m");
  link_comment_threads(c);
  EXPECT_EQ(c.datasets[1][0].source.comment_thread, std::vector<std::string>{"c1"});

  save_corpus(c, dir.path());
  auto loaded = load_corpus({dir.path()}, Platform::kFacebook, "ego");
  auto& got = loaded.corpus.datasets;
  std::erase_if(got, [](const auto& kv) { return kv.second.empty(); });
  EXPECT_EQ(got, c.datasets);
  EXPECT_EQ(loaded.corpus.members, c.members);
  EXPECT_EQ(loaded.corpus.document_count(), 3u);
}

TEST(CorpusFiles, MissingDataset5) {
  testing::TempDir dir;
  EXPECT_EQ(code_of([&] { load_corpus({dir.path()}, Platform::kTwitter, "ego"); }),
            ErrorCode::kMissingDataset);
}

TEST(CorpusFiles, UnlistedMemberFolderIsSkipped) {
  testing::TempDir dir;
  testing::write_file(dir / "dataset5.csv", std::string(kMembersHeader) + "\nm1,A,Friend,Post,\n");
  testing::write_file(dir / "members/m1/dataset6.csv", kHeader + "q1,a,A,m1,0,0,en,2023-01-01T00:00:00Z,\n");
  testing::write_file(dir / "members/zz/dataset6.csv", kHeader + "q1,b,Z,zz,0,0,en,2023-01-01T00:00:00Z,\n");
  auto loaded = load_corpus({dir.path()}, Platform::kTwitter, "ego");
  EXPECT_EQ(loaded.corpus.datasets[6].size(), 1u);
  EXPECT_FALSE(loaded.warnings.empty());
}

}  // namespace
}  // namespace egorank

#include "egorank/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "egorank/csv.hpp"
#include "egorank/error.hpp"
#include "text_util.hpp"

namespace egorank {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPlatformNames[] = {"Facebook", "Twitter", "LinkedIn"};
constexpr std::string_view kActivityNames[] = {"Post", "React", "Comment", "Tag", "Share", "Message"};
constexpr std::string_view kKindNames[] = {"Friend", "Follower", "Following",
                                           "Connection", "Page", "Group"};

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::string_view (&names)[N]) {
  s = detail::trim(s);
  for (std::size_t i = 0; i < N; ++i) {
    if (detail::iequals(s, names[i])) return static_cast<E>(i);
  }
  return std::nullopt;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = detail::ascii_lower(c);
  return out;
}

std::string row_context(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

// Column positions resolved from the header row.
template <std::size_t N>
std::array<std::size_t, N> map_header(const std::vector<std::string>& header,
                                      const std::array<std::string_view, N>& expected,
                                      const std::string& source) {
  std::array<std::size_t, N> pos{};
  for (std::size_t i = 0; i < N; ++i) {
    auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return detail::trim(h) == expected[i];
    });
    if (it == header.end()) {
      throw Error(ErrorCode::kMissingColumn,
                  std::string(expected[i]) + " (in " + source + ")");
    }
    pos[i] = static_cast<std::size_t>(it - header.begin());
  }
  return pos;
}

constexpr std::array<std::string_view, 9> kActivityColumns = {
    "post_id", "content", "user_name", "user_id", "react_count",
    "share_count", "language", "time", "parent_post_id"};
constexpr std::array<std::string_view, 5> kMemberColumns = {
    "member_id", "display_name", "kind", "activity_types", "connections_count"};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string_view to_string(Platform p) { return kPlatformNames[static_cast<int>(p)]; }
std::string_view to_string(ActivityType a) { return kActivityNames[static_cast<int>(a)]; }
std::string_view to_string(MemberKind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<Platform> parse_platform(std::string_view s) {
  return parse_enum<Platform>(s, kPlatformNames);
}
std::optional<ActivityType> parse_activity_type(std::string_view s) {
  return parse_enum<ActivityType>(s, kActivityNames);
}
std::optional<MemberKind> parse_member_kind(std::string_view s) {
  return parse_enum<MemberKind>(s, kKindNames);
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  s = detail::trim(s);
  // YYYY-MM-DDTHH:MM:SSZ
  if (s.size() != 20 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't') ||
      s[13] != ':' || s[16] != ':' || (s[19] != 'Z' && s[19] != 'z')) {
    return std::nullopt;
  }
  auto field = [&](std::size_t at, std::size_t len, int& out) {
    for (std::size_t i = at; i < at + len; ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return detail::parse_number(s.substr(at, len), out);
  };
  int y, mo, d, h, mi, se;
  if (!field(0, 4, y) || !field(5, 2, mo) || !field(8, 2, d) || !field(11, 2, h) ||
      !field(14, 2, mi) || !field(17, 2, se)) {
    return std::nullopt;
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 59) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const sys_days day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long long>(hms.hours().count()),
                static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

ActivityType default_activity(int dataset_no) {
  switch (dataset_no) {
    case 2:
    case 7: return ActivityType::kShare;
    case 3:
    case 8: return ActivityType::kComment;
    case 4:
    case 9: return ActivityType::kMessage;
    default: return ActivityType::kPost;
  }
}

std::string make_doc_id(std::string_view owner_id, int dataset_no, std::string_view post_id) {
  std::string id(owner_id);
  id += ":d";
  id += std::to_string(dataset_no);
  id += ':';
  id += post_id;
  return id;
}

std::size_t Corpus::document_count() const {
  std::size_t n = 0;
  for (const auto& [no, docs] : datasets) n += docs.size();
  return n;
}

std::vector<const Document*> Corpus::all_documents() const {
  std::vector<const Document*> out;
  out.reserve(document_count());
  for (const auto& [no, docs] : datasets) {
    for (const Document& d : docs) out.push_back(&d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Activity CSV

std::vector<Document> read_activity_csv(std::istream& in, int dataset_no,
                                        const std::string& owner_id, const TimeWindow& window,
                                        std::optional<ActivityType> activity,
                                        const std::string& source_name) {
  if (!is_content_dataset(dataset_no)) {
    throw Error(ErrorCode::kBadParams,
                "dataset " + std::to_string(dataset_no) + " is not an activity dataset");
  }
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw Error(ErrorCode::kEmptyFile, source_name);
  const auto col = map_header(row, kActivityColumns, source_name);
  const std::size_t width = row.size();
  const bool dependent = is_dependent_dataset(dataset_no);
  const ActivityType type = activity.value_or(default_activity(dataset_no));

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  while (reader.next(row)) {
    const std::string where = row_context(source_name, reader.line());
    if (row.size() != width) {
      throw Error(ErrorCode::kBadRow, where + ": expected " + std::to_string(width) +
                                          " fields, got " + std::to_string(row.size()));
    }
    ActivityRecord rec;
    rec.post_id = std::string(detail::trim(row[col[0]]));
    rec.content = row[col[1]];
    rec.user_name = row[col[2]];
    rec.user_id = std::string(detail::trim(row[col[3]]));
    if (rec.post_id.empty()) throw Error(ErrorCode::kBadRow, where + ": empty post_id");
    if (rec.user_id.empty()) throw Error(ErrorCode::kBadRow, where + ": empty user_id");
    if (!seen.insert(rec.post_id).second) {
      throw Error(ErrorCode::kBadRow, where + ": duplicate post_id " + rec.post_id);
    }
    if (!detail::parse_number(row[col[4]], rec.react_count)) {
      throw Error(ErrorCode::kBadRow, where + ": react_count must be a nonnegative integer");
    }
    if (!detail::parse_number(row[col[5]], rec.share_count)) {
      throw Error(ErrorCode::kBadRow, where + ": share_count must be a nonnegative integer");
    }
    rec.language = std::string(detail::trim(row[col[6]]));
    if (rec.language.empty()) rec.language = "und";
    auto ts = parse_timestamp(row[col[7]]);
    if (!ts) throw Error(ErrorCode::kBadTimestamp, where + ": '" + row[col[7]] + "'");
    rec.time = *ts;
    rec.parent_post_id = std::string(detail::trim(row[col[8]]));
    if (dependent && rec.parent_post_id.empty()) {
      throw Error(ErrorCode::kBadRow, where + ": dataset " + std::to_string(dataset_no) +
                                          " requires parent_post_id");
    }
    if (!dependent && !rec.parent_post_id.empty()) {
      throw Error(ErrorCode::kBadRow, where + ": dataset " + std::to_string(dataset_no) +
                                          " must leave parent_post_id empty");
    }
    if (!window.contains(rec.time)) continue;

    Document doc;
    doc.doc_id = make_doc_id(owner_id, dataset_no, rec.post_id);
    doc.owner_id = owner_id;
    doc.text = rec.content;
    doc.dataset_no = dataset_no;
    doc.activity_type = type;
    if (dependent) {
      doc.parent_doc_id = make_doc_id(owner_id, parent_dataset(dataset_no), rec.parent_post_id);
    }
    doc.time = rec.time;
    doc.source = std::move(rec);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_activity_csv(const fs::path& path, int dataset_no,
                                        const std::string& owner_id, const TimeWindow& window,
                                        std::optional<ActivityType> activity) {
  auto in = open_input(path);
  return read_activity_csv(in, dataset_no, owner_id, window, activity, path.string());
}

void write_activity_csv(std::ostream& out, std::span<const Document> docs) {
  out << kActivityHeader << '\n';
  for (const Document& d : docs) {
    const ActivityRecord& r = d.source;
    const std::string fields[] = {r.post_id,
                                  d.text,
                                  r.user_name,
                                  r.user_id,
                                  std::to_string(r.react_count),
                                  std::to_string(r.share_count),
                                  r.language,
                                  format_timestamp(d.time),
                                  r.parent_post_id};
    csv::write_row(out, fields);
  }
}

void write_activity_csv(const fs::path& path, std::span<const Document> docs) {
  auto out = open_output(path);
  write_activity_csv(out, docs);
}

// ---------------------------------------------------------------------------
// Dataset 5

std::vector<InteractedMember> read_members_csv(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw Error(ErrorCode::kEmptyFile, source_name);
  const auto col = map_header(row, kMemberColumns, source_name);
  const std::size_t width = row.size();

  std::vector<InteractedMember> members;
  while (reader.next(row)) {
    const std::string where = row_context(source_name, reader.line());
    if (row.size() != width) {
      throw Error(ErrorCode::kBadRow, where + ": expected " + std::to_string(width) +
                                          " fields, got " + std::to_string(row.size()));
    }
    InteractedMember m;
    m.member_id = std::string(detail::trim(row[col[0]]));
    if (m.member_id.empty()) throw Error(ErrorCode::kBadRow, where + ": empty member_id");
    m.display_name = row[col[1]];
    auto kind = parse_member_kind(row[col[2]]);
    if (!kind) throw Error(ErrorCode::kBadRow, where + ": unknown kind '" + row[col[2]] + "'");
    m.kind = *kind;
    for (std::string_view part : detail::split(row[col[3]], ';')) {
      if (detail::trim(part).empty()) continue;
      auto a = parse_activity_type(part);
      if (!a) {
        throw Error(ErrorCode::kBadRow, where + ": unknown activity '" + std::string(part) + "'");
      }
      m.activity_types.insert(*a);
    }
    if (m.activity_types.empty()) {
      throw Error(ErrorCode::kBadRow, where + ": activity_types must be nonempty");
    }
    std::string_view count = detail::trim(row[col[4]]);
    if (!count.empty()) {
      std::uint64_t n = 0;
      if (!detail::parse_number(count, n)) {
        throw Error(ErrorCode::kBadRow, where + ": bad connections_count '" + row[col[4]] + "'");
      }
      m.connections_count = n;
    }
    members.push_back(std::move(m));
  }
  return members;
}

std::vector<InteractedMember> load_members_csv(const fs::path& path) {
  auto in = open_input(path);
  return read_members_csv(in, path.string());
}

void write_members_csv(std::ostream& out, std::span<const InteractedMember> members) {
  out << kMembersHeader << '\n';
  for (const InteractedMember& m : members) {
    std::string acts;
    for (ActivityType a : m.activity_types) {
      if (!acts.empty()) acts += ';';
      acts += to_string(a);
    }
    const std::string fields[] = {
        m.member_id, m.display_name, std::string(to_string(m.kind)), acts,
        m.connections_count ? std::to_string(*m.connections_count) : std::string()};
    csv::write_row(out, fields);
  }
}

void write_members_csv(const fs::path& path, std::span<const InteractedMember> members) {
  auto out = open_output(path);
  write_members_csv(out, members);
}

MemberKind default_member_kind(Platform p) {
  switch (p) {
    case Platform::kFacebook: return MemberKind::kFriend;
    case Platform::kTwitter: return MemberKind::kFollowing;
    case Platform::kLinkedIn: return MemberKind::kConnection;
  }
  return MemberKind::kFriend;
}

InteractionList build_interaction_list(const Corpus& corpus, std::span<const std::string> mentions) {
  InteractionList result;
  std::map<std::string, InteractedMember> merged;
  for (const InteractedMember& row : corpus.members) {
    auto [it, inserted] = merged.try_emplace(row.member_id, row);
    if (inserted) continue;
    InteractedMember& m = it->second;
    m.kind = std::min(m.kind, row.kind);
    m.activity_types.insert(row.activity_types.begin(), row.activity_types.end());
    if (!row.display_name.empty() &&
        (m.display_name.empty() || row.display_name < m.display_name)) {
      m.display_name = row.display_name;
    }
    if (row.connections_count &&
        (!m.connections_count || *row.connections_count > *m.connections_count)) {
      m.connections_count = row.connections_count;
    }
  }
  if (corpus.members.empty()) {
    result.warnings.push_back("Dataset 5 is empty: no interacted members");
  }

  std::unordered_map<std::string, std::string> by_name;  // lowercase display name -> id
  for (const auto& [id, m] : merged) {
    if (!m.display_name.empty()) by_name.try_emplace(lowercase(m.display_name), id);
  }
  for (const std::string& mention : mentions) {
    if (mention.empty()) continue;
    auto it = merged.find(mention);
    if (it == merged.end()) {
      auto named = by_name.find(lowercase(mention));
      if (named != by_name.end()) it = merged.find(named->second);
    }
    if (it != merged.end()) {
      it->second.activity_types.insert(ActivityType::kTag);
      continue;
    }
    InteractedMember m;
    m.member_id = mention;
    m.display_name = mention;
    m.kind = default_member_kind(corpus.platform);
    m.activity_types = {ActivityType::kTag};
    by_name.try_emplace(lowercase(mention), mention);
    merged.emplace(mention, std::move(m));
  }

  result.members.reserve(merged.size());
  for (auto& [id, m] : merged) result.members.push_back(std::move(m));
  return result;
}

void link_comment_threads(Corpus& corpus) {
  std::unordered_map<std::string, Document*> parents;
  for (int no : {1, 6}) {
    auto it = corpus.datasets.find(no);
    if (it == corpus.datasets.end()) continue;
    for (Document& d : it->second) {
      d.source.comment_thread.clear();
      parents.emplace(d.doc_id, &d);
    }
  }
  for (int no : {3, 8}) {
    auto it = corpus.datasets.find(no);
    if (it == corpus.datasets.end()) continue;
    for (const Document& d : it->second) {
      if (!d.parent_doc_id) continue;
      auto p = parents.find(*d.parent_doc_id);
      if (p != parents.end()) p->second->source.comment_thread.push_back(d.source.post_id);
    }
  }
}

// ---------------------------------------------------------------------------
// Directory layout

fs::path CorpusLayout::dataset5_path() const { return dataset5.value_or(root / "dataset5.csv"); }
fs::path CorpusLayout::ego_path() const { return ego_dir.value_or(root / "ego"); }
fs::path CorpusLayout::members_path() const { return members_dir.value_or(root / "members"); }

namespace {

struct DatasetFile {
  fs::path path;
  std::optional<ActivityType> activity;
};

// datasetN.csv and datasetN_<activity>.csv in `dir`, sorted by file name.
std::vector<DatasetFile> dataset_files(const fs::path& dir, int dataset_no) {
  std::vector<DatasetFile> files;
  if (!fs::is_directory(dir)) return files;
  const std::string stem = "dataset" + std::to_string(dataset_no);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const fs::path& p : paths) {
    std::string name = p.stem().string();
    if (name == stem) {
      files.push_back({p, std::nullopt});
    } else if (name.rfind(stem + "_", 0) == 0) {
      auto a = parse_activity_type(std::string_view(name).substr(stem.size() + 1));
      if (a) files.push_back({p, a});
    }
  }
  return files;
}

void append_unique(std::vector<Document>& into, std::vector<Document> docs,
                   std::unordered_set<std::string>& ids, const fs::path& source) {
  for (Document& d : docs) {
    if (!ids.insert(d.doc_id).second) {
      throw Error(ErrorCode::kBadRow, source.string() + ": duplicate post_id " + d.source.post_id +
                                          " within dataset " + std::to_string(d.dataset_no));
    }
    into.push_back(std::move(d));
  }
}

std::string file_name_for(int dataset_no, ActivityType a) {
  std::string name = "dataset" + std::to_string(dataset_no);
  if (a != default_activity(dataset_no)) name += "_" + lowercase(to_string(a));
  return name + ".csv";
}

}  // namespace

LoadedCorpus load_corpus(const CorpusLayout& layout, Platform platform, const std::string& ego_id,
                         const TimeWindow& window) {
  LoadedCorpus out;
  Corpus& corpus = out.corpus;
  corpus.platform = platform;
  corpus.ego_id = ego_id;
  corpus.window = window;

  const fs::path d5 = layout.dataset5_path();
  if (!fs::exists(d5)) throw Error(ErrorCode::kMissingDataset, "5 (" + d5.string() + ")");
  corpus.members = load_members_csv(d5);

  std::unordered_set<std::string> ids;
  for (int no = 1; no <= 4; ++no) {
    auto& docs = corpus.datasets[no];
    for (const DatasetFile& f : dataset_files(layout.ego_path(), no)) {
      append_unique(docs, load_activity_csv(f.path, no, ego_id, window, f.activity), ids, f.path);
    }
  }

  std::set<std::string> listed;
  for (const InteractedMember& m : corpus.members) listed.insert(m.member_id);
  for (int no = 6; no <= 9; ++no) corpus.datasets[no];
  const fs::path members_root = layout.members_path();
  if (fs::is_directory(members_root)) {
    std::vector<fs::path> member_dirs;
    for (const auto& entry : fs::directory_iterator(members_root)) {
      if (entry.is_directory()) member_dirs.push_back(entry.path());
    }
    std::sort(member_dirs.begin(), member_dirs.end());
    for (const fs::path& dir : member_dirs) {
      const std::string member_id = dir.filename().string();
      if (!listed.count(member_id)) {
        out.warnings.push_back("skipping folder of unlisted member " + member_id);
        continue;
      }
      for (int no = 6; no <= 9; ++no) {
        for (const DatasetFile& f : dataset_files(dir, no)) {
          append_unique(corpus.datasets[no],
                        load_activity_csv(f.path, no, member_id, window, f.activity), ids, f.path);
        }
      }
    }
  }
  link_comment_threads(corpus);
  return out;
}

void save_corpus(const Corpus& corpus, const fs::path& root) {
  fs::create_directories(root);
  write_members_csv(root / "dataset5.csv", corpus.members);

  // Group documents by (owner, dataset, activity) into their files. Files
  // are written in the order load_corpus() reads them back.
  std::map<fs::path, std::vector<Document>> files;
  for (const auto& [no, docs] : corpus.datasets) {
    for (const Document& d : docs) {
      fs::path dir = is_ego_dataset(no) ? root / "ego" : root / "members" / d.owner_id;
      files[dir / file_name_for(no, d.activity_type)].push_back(d);
    }
  }
  for (int no = 1; no <= 4; ++no) {
    fs::path p = root / "ego" / file_name_for(no, default_activity(no));
    files.try_emplace(p);
  }
  for (const auto& [path, docs] : files) write_activity_csv(path, docs);
}

}  // namespace egorank

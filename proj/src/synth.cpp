#include "egorank/synth.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "egorank/csv.hpp"
#include "egorank/error.hpp"
#include "rng.hpp"
#include "text_util.hpp"

namespace egorank::synth {

namespace {

using detail::Rng;

constexpr std::string_view kForeignWords[] = {
    "hola", "gracias", "amigos", "partido", "gobierno", "equipo", "noticias",
    "ciudad", "hoy",  "nuevo",   "trabajo", "familia",  "siempre", "todos"};
constexpr std::string_view kNoiseTails[] = {"!!!", "\xF0\x9F\x9A\x80", "\xF0\x9F\x98\x80 !!", "??", "~~"};

// Category word used by a text.
enum class WordSource {
  kProfile,     // weighted draw from the whole profile
  kFocus,       // mostly the ego's focus words
  kBackground,  // profile minus the focus words
};

class WeightedPicker {
 public:
  explicit WeightedPicker(const WeightedWords& words) {
    double total = 0.0;
    for (const auto& [w, weight] : words) {
      total += weight;
      words_.push_back(w);
      cumulative_.push_back(total);
    }
  }
  bool empty() const { return words_.empty(); }
  const std::string& pick(Rng& rng) const {
    const double x = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    const std::size_t i = std::min<std::size_t>(it - cumulative_.begin(), words_.size() - 1);
    return words_[i];
  }

 private:
  std::vector<std::string> words_;
  std::vector<double> cumulative_;
};

class TextMaker {
 public:
  TextMaker(const SynthParams& p, std::vector<std::string> focus) : p_(p), focus_(std::move(focus)) {
    const std::unordered_set<std::string> focus_set(focus_.begin(), focus_.end());
    for (Category c : kAllCategories) {
      const WeightedWords& words = p.topic_profiles.at(c);
      profile_.emplace(c, WeightedPicker(words));
      WeightedWords rest;
      for (const auto& e : words) {
        if (!focus_set.count(e.first)) rest.push_back(e);
      }
      background_.emplace(c, WeightedPicker(rest.empty() ? words : rest));
    }
  }

  // Plain text for `bucket`, without noise.
  std::vector<std::string> tokens(const Bucket& bucket, WordSource source, Rng& rng) const {
    const std::size_t n = rng.between(p_.min_tokens, p_.max_tokens);
    const std::size_t n_sent = n >= 12 ? 2 : 1;
    const std::size_t n_cat = std::max<std::size_t>(1, (n - n_sent) * 6 / 10);
    const std::size_t n_fill = n - n_sent - n_cat;
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n_cat; ++i) out.push_back(category_word(bucket.category, source, rng));
    const auto& polar = bucket.sentiment == Sentiment::kPositive ? p_.positive_words : p_.negative_words;
    for (std::size_t i = 0; i < n_sent; ++i) out.push_back(rng.pick(polar));
    for (std::size_t i = 0; i < n_fill; ++i) out.push_back(rng.pick(p_.vocab));
    rng.shuffle(out);
    return out;
  }

 private:
  const std::string& category_word(Category c, WordSource source, Rng& rng) const {
    switch (source) {
      case WordSource::kFocus:
        if (c == p_.ego_bucket.category && rng.chance(0.85)) return rng.pick(focus_);
        return profile_.at(c).pick(rng);
      case WordSource::kBackground:
        return background_.at(c).pick(rng);
      case WordSource::kProfile:
        break;
    }
    return profile_.at(c).pick(rng);
  }

  const SynthParams& p_;
  std::vector<std::string> focus_;
  std::map<Category, WeightedPicker> profile_;
  std::map<Category, WeightedPicker> background_;
};

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

void add_noise(std::vector<std::string>& tokens, const std::vector<std::string>& member_ids, Rng& rng) {
  switch (rng.index(4)) {
    case 0:
      tokens.front()[0] = upper(tokens.front().substr(0, 1))[0];
      break;
    case 1:
      tokens.push_back(std::string(kNoiseTails[rng.index(std::size(kNoiseTails))]));
      break;
    case 2:
      if (!member_ids.empty()) {
        tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(rng.index(tokens.size() + 1)),
                      "@" + rng.pick(member_ids));
      }
      break;
    default: {
      std::string& t = tokens[rng.index(tokens.size())];
      t = upper(t);
      break;
    }
  }
}

Bucket other_bucket(const Bucket& avoid, Rng& rng) {
  std::vector<Bucket> others;
  for (const Bucket& b : all_buckets()) {
    if (b != avoid) others.push_back(b);
  }
  return rng.pick(others);
}

void validate(const SynthParams& p) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::kBadParams, m); };
  if (p.members == 0) bad("members must be positive");
  if (p.docs_per_member == 0) bad("docs_per_member must be positive");
  if (p.ego_docs == 0) bad("ego_docs must be positive");
  if (p.vocab.empty()) bad("vocab is empty");
  if (p.positive_words.empty() || p.negative_words.empty()) bad("sentiment word lists are empty");
  for (Category c : kAllCategories) {
    auto it = p.topic_profiles.find(c);
    if (it == p.topic_profiles.end() || it->second.empty()) {
      bad("topic profile for " + std::string(to_string(c)) + " is empty");
    }
    for (const auto& [w, weight] : it->second) {
      if (!(weight > 0.0)) bad("topic word '" + w + "' has a nonpositive weight");
    }
  }
  if (p.groups + p.planted > p.members) bad("groups + planted exceeds members");
  if (p.mega_members > p.planted) bad("mega_members exceeds planted");
  if (p.focus_words == 0 || p.focus_words > p.topic_profiles.at(p.ego_bucket.category).size()) {
    bad("focus_words must be between 1 and the size of the ego category profile");
  }
  if (p.min_tokens < 3 || p.max_tokens < p.min_tokens) bad("need 3 <= min_tokens <= max_tokens");
  if (p.foreign_docs > p.members - p.groups - p.planted) {
    bad("foreign_docs exceeds the number of background members");
  }
}

// Picks the ego's focus words: the heaviest words of the ego category,
// ties broken alphabetically.
std::vector<std::string> choose_focus(const SynthParams& p) {
  WeightedWords words = p.topic_profiles.at(p.ego_bucket.category);
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.focus_words; ++i) out.push_back(words[i].first);
  return out;
}

struct OwnerState {
  OwnerState(std::string id, std::string name) : owner_id(std::move(id)), display_name(std::move(name)) {}

  std::string owner_id;
  std::string display_name;
  std::size_t next_post = 1001;
  // (post_id, bucket, source, time) of the owner's posts.
  struct Parent {
    std::string post_id;
    Bucket bucket;
    WordSource source;
    Timestamp time;
  };
  std::vector<Parent> parents;
};

constexpr Timestamp kEpoch = std::chrono::sys_days{std::chrono::year{2024} / 1 / 1};

}  // namespace

TopicProfiles load_topic_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open topic profiles " + path.string());
  TopicProfiles out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = detail::trim(line);
    if (l.empty() || l.front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    auto parts = detail::split(l, '\t');
    if (parts.size() < 2 || parts.size() > 3) throw Error(ErrorCode::kBadRow, where + ": expected category<TAB>word[<TAB>weight]");
    auto c = parse_category(detail::trim(parts[0]));
    if (!c) throw Error(ErrorCode::kBadRow, where + ": unknown category '" + std::string(parts[0]) + "'");
    double weight = 1.0;
    if (parts.size() == 3 && (!detail::parse_number(parts[2], weight) || !(weight > 0.0))) {
      throw Error(ErrorCode::kBadRow, where + ": weight must be a positive number");
    }
    out[*c].emplace_back(std::string(detail::trim(parts[1])), weight);
  }
  for (Category c : kAllCategories) {
    if (out[c].empty()) throw Error(ErrorCode::kMissingCategory, std::string(to_string(c)) + " in " + path.string());
  }
  return out;
}

SyntheticCorpus generate_synthetic_corpus(const SynthParams& p) {
  validate(p);
  Rng rng(p.seed);
  SyntheticCorpus out;
  out.focus_words = choose_focus(p);
  const TextMaker maker(p, out.focus_words);

  Corpus& corpus = out.corpus;
  corpus.platform = p.platform;
  corpus.ego_id = p.ego_id;
  for (int no : {1, 2, 3, 4, 6, 7, 8, 9}) corpus.datasets[no];

  // Members and their roles.
  const std::size_t width = std::max<std::size_t>(3, std::to_string(p.members).size());
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= p.members; ++i) {
    std::string n = std::to_string(i);
    ids.push_back("m" + std::string(width - n.size(), '0') + n);
  }
  std::vector<std::size_t> order(p.members);
  for (std::size_t i = 0; i < p.members; ++i) order[i] = i;
  rng.shuffle(order);
  std::set<std::string> groups, planted, mega, foreign_carriers;
  std::size_t k = 0;
  for (; k < p.groups; ++k) groups.insert(ids[order[k]]);
  for (std::size_t j = 0; j < p.planted; ++j, ++k) {
    planted.insert(ids[order[k]]);
    if (j < p.mega_members) mega.insert(ids[order[k]]);
  }
  for (std::size_t j = 0; j < p.foreign_docs; ++j, ++k) foreign_carriers.insert(ids[order[k]]);

  const std::vector<MemberKind> regular_kinds = [&] {
    switch (p.platform) {
      case Platform::kFacebook: return std::vector{MemberKind::kFriend, MemberKind::kFollower};
      case Platform::kLinkedIn: return std::vector{MemberKind::kConnection, MemberKind::kFollower};
      case Platform::kTwitter: break;
    }
    return std::vector{MemberKind::kFollower, MemberKind::kFollowing};
  }();
  const std::vector<ActivityType> interactions = {ActivityType::kPost, ActivityType::kReact,
                                                  ActivityType::kComment, ActivityType::kTag,
                                                  ActivityType::kShare, ActivityType::kMessage};
  for (const std::string& id : ids) {
    InteractedMember m;
    m.member_id = id;
    m.display_name = "User " + id.substr(1);
    if (groups.count(id)) {
      m.kind = MemberKind::kGroup;
    } else if (mega.count(id)) {
      m.kind = MemberKind::kPage;
    } else {
      m.kind = rng.chance(0.1) ? MemberKind::kPage : rng.pick(regular_kinds);
    }
    const std::size_t n_types = 1 + rng.index(3);
    for (std::size_t t = 0; t < n_types; ++t) m.activity_types.insert(rng.pick(interactions));
    if (mega.count(id)) {
      m.connections_count = rng.between(6000, 50000);
    } else if (planted.count(id) || groups.count(id) || !rng.chance(0.05)) {
      m.connections_count = rng.between(20, 4500);
    }
    corpus.members.push_back(std::move(m));
  }
  out.planted.assign(planted.begin(), planted.end());
  out.mega.assign(mega.begin(), mega.end());
  out.groups.assign(groups.begin(), groups.end());

  // Documents.
  auto emit = [&](OwnerState& owner, int dataset_no, const Bucket& bucket, WordSource source,
                  const OwnerState::Parent* parent, bool foreign) {
    ActivityRecord rec;
    rec.post_id = std::to_string(owner.next_post++);
    rec.user_id = owner.owner_id;
    rec.user_name = owner.display_name;
    rec.react_count = rng.between(0, 500);
    rec.share_count = rng.between(0, 100);
    rec.time = parent ? parent->time + std::chrono::seconds(rng.between(60, 86400))
                      : kEpoch + std::chrono::seconds(rng.index(365 * 86400));
    if (parent) rec.parent_post_id = parent->post_id;
    if (foreign) {
      std::vector<std::string> words;
      const std::size_t n = rng.between(p.min_tokens, p.max_tokens);
      for (std::size_t i = 0; i < n; ++i) words.emplace_back(kForeignWords[rng.index(std::size(kForeignWords))]);
      rec.content = join(words);
      rec.language = "es";
    } else {
      std::vector<std::string> words = maker.tokens(bucket, source, rng);
      if (rng.chance(p.noise)) add_noise(words, ids, rng);
      rec.content = join(words);
      rec.language = rng.chance(0.5) ? "en" : "und";
    }

    Document doc;
    doc.doc_id = make_doc_id(owner.owner_id, dataset_no, rec.post_id);
    doc.owner_id = owner.owner_id;
    doc.text = rec.content;
    doc.dataset_no = dataset_no;
    doc.activity_type = default_activity(dataset_no);
    if (parent) doc.parent_doc_id = make_doc_id(owner.owner_id, parent_dataset(dataset_no), parent->post_id);
    doc.time = rec.time;
    doc.source = rec;
    if (foreign) {
      out.foreign.push_back(doc.doc_id);
    } else {
      out.truth.emplace(doc.doc_id, bucket);
    }
    if (dataset_no == 1 || dataset_no == 6) {
      owner.parents.push_back({rec.post_id, bucket, source, rec.time});
    }
    corpus.datasets[dataset_no].push_back(std::move(doc));
  };

  // Datasets are drawn as base + {0: post, 1: share, 2: comment, 3: message}.
  auto draw_offset = [&](std::size_t i) -> int {
    if (i == 0) return 0;
    const double x = rng.uniform();
    return x < 0.45 ? 0 : x < 0.65 ? 1 : x < 0.8 ? 2 : 3;
  };
  auto generate_owner = [&](OwnerState& owner, int base, std::size_t n_docs, double focus_rate,
                            WordSource in_bucket_source, bool with_foreign) {
    for (std::size_t i = 0; i < n_docs; ++i) {
      if (with_foreign && i + 1 == n_docs) {
        emit(owner, base + 3, Bucket{}, WordSource::kProfile, nullptr, true);
        continue;
      }
      const int offset = draw_offset(i);
      if (offset == 1 || offset == 2) {
        const OwnerState::Parent parent = rng.pick(owner.parents);
        emit(owner, base + offset, parent.bucket, parent.source, &parent, false);
        continue;
      }
      const bool in_bucket = rng.chance(focus_rate);
      const Bucket bucket = in_bucket ? p.ego_bucket : other_bucket(p.ego_bucket, rng);
      emit(owner, base + offset, bucket, in_bucket ? in_bucket_source : WordSource::kProfile, nullptr, false);
    }
  };

  OwnerState ego{p.ego_id, "Ego"};
  generate_owner(ego, 1, p.ego_docs, p.ego_focus, WordSource::kFocus, false);
  for (const InteractedMember& m : corpus.members) {
    OwnerState owner{m.member_id, m.display_name};
    const bool is_planted = planted.count(m.member_id) > 0;
    generate_owner(owner, 6, p.docs_per_member, is_planted ? p.planted_focus : p.background_rate,
                   is_planted ? WordSource::kFocus : WordSource::kBackground,
                   foreign_carriers.count(m.member_id) > 0);
  }
  std::sort(out.foreign.begin(), out.foreign.end());
  link_comment_threads(corpus);
  return out;
}

std::vector<std::pair<std::string, Category>> generate_seed_corpus(const SynthParams& p,
                                                                   std::size_t per_category) {
  validate(p);
  Rng rng(p.seed ^ 0x5eedc0de5eedc0deULL);
  const TextMaker maker(p, choose_focus(p));
  std::vector<std::pair<std::string, Category>> rows;
  for (Category c : kAllCategories) {
    for (std::size_t i = 0; i < per_category; ++i) {
      const Bucket b{c, rng.chance(0.5) ? Sentiment::kPositive : Sentiment::kNegative};
      rows.emplace_back(join(maker.tokens(b, WordSource::kProfile, rng)), c);
    }
  }
  return rows;
}

void write_seed_corpus(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, Category>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  csv::write_row(out, std::vector<std::string>{"text", "category"});
  for (const auto& [text, c] : rows) csv::write_row(out, std::vector<std::string>{text, std::string(to_string(c))});
}

simdex::WordVectorStore generate_word_vectors(const SynthParams& p, const std::vector<std::string>& focus_words,
                                              std::size_t dim, std::size_t total_words) {
  if (dim == 0) throw Error(ErrorCode::kBadParams, "embedding dimension must be positive");
  Rng rng(p.seed ^ 0xe5bedd1e6e5bedd1ULL);
  auto gaussian = [&](double scale) {
    std::vector<double> v(dim);
    for (double& x : v) x = scale * rng.normal();
    return v;
  };
  auto around = [&](const std::vector<double>& centre, double spread) {
    std::vector<double> v = gaussian(spread);
    for (std::size_t i = 0; i < dim; ++i) v[i] += centre[i];
    return v;
  };

  simdex::WordVectorStore store(dim);
  auto add = [&](const std::string& w, const std::vector<double>& v) {
    if (!store.contains(w)) store.add(w, v);
  };
  std::map<Category, std::vector<double>> centres;
  for (Category c : kAllCategories) centres[c] = gaussian(1.0);
  const std::vector<double> focus_centre = around(centres[p.ego_bucket.category], 0.5);
  const std::vector<double> positive = gaussian(1.0);
  const std::vector<double> negative = gaussian(1.0);

  for (const std::string& w : focus_words) add(w, around(focus_centre, 0.15));
  for (Category c : kAllCategories) {
    for (const auto& [w, weight] : p.topic_profiles.at(c)) add(w, around(centres[c], 0.35));
  }
  for (const std::string& w : p.positive_words) add(w, around(positive, 0.35));
  for (const std::string& w : p.negative_words) add(w, around(negative, 0.35));
  for (const std::string& w : p.vocab) add(w, gaussian(1.0));
  for (std::size_t i = 1; store.size() < total_words; ++i) {
    std::string n = std::to_string(i);
    add("pad" + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n, gaussian(1.0));
  }
  return store;
}

}  // namespace egorank::synth

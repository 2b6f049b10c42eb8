#include "egorank/lexproc.hpp"

#include <fstream>

#include "egorank/error.hpp"
#include "text_util.hpp"

namespace egorank::lexproc {

namespace {

bool is_token_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// "runn" -> "run"; empty if the stem does not end in a doubled consonant.
std::string undouble(const std::string& stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])) return stem.substr(0, n - 1);
  return {};
}

void add_candidate(std::vector<std::string>& out, std::string c) {
  if (c.size() >= 2) out.push_back(std::move(c));
}

std::vector<std::string> rule_candidates(const std::string& w) {
  std::vector<std::string> out;
  // nouns
  if (ends_with(w, "ies")) add_candidate(out, w.substr(0, w.size() - 3) + "y");
  if (ends_with(w, "es")) add_candidate(out, w.substr(0, w.size() - 2));
  if (ends_with(w, "s") && !ends_with(w, "ss")) add_candidate(out, w.substr(0, w.size() - 1));
  // verbs
  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    add_candidate(out, stem);
    add_candidate(out, stem + "e");
    add_candidate(out, undouble(stem));
    if (ends_with(stem, "y")) add_candidate(out, stem.substr(0, stem.size() - 1) + "ie");
  }
  if (ends_with(w, "ied")) add_candidate(out, w.substr(0, w.size() - 3) + "y");
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    add_candidate(out, stem);
    add_candidate(out, stem + "e");
    add_candidate(out, undouble(stem));
  }
  // comparatives / superlatives
  if (ends_with(w, "ier")) add_candidate(out, w.substr(0, w.size() - 3) + "y");
  if (ends_with(w, "iest")) add_candidate(out, w.substr(0, w.size() - 4) + "y");
  for (std::string_view suf : {std::string_view("er"), std::string_view("est")}) {
    if (!ends_with(w, suf)) continue;
    std::string stem = w.substr(0, w.size() - suf.size());
    add_candidate(out, stem);
    add_candidate(out, stem + "e");
    add_candidate(out, undouble(stem));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_token_char(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && is_token_char(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

StopList StopList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingStopList, path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view w = detail::trim(line);
    if (w.empty() || w.front() == '#') continue;
    std::string lowered(w);
    for (char& c : lowered) c = detail::ascii_lower(c);
    words.insert(std::move(lowered));
  }
  return StopList(std::move(words));
}

std::vector<std::string> remove_stop_words(std::span<const std::string> tokens, const StopList& stop_list) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    if (!stop_list.contains(t)) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------

Lemmatizer::Lemmatizer(std::unordered_set<std::string> lemmas,
                       std::unordered_map<std::string, std::string> exceptions)
    : lemmas_(std::move(lemmas)), exceptions_(std::move(exceptions)) {
  for (const auto& [form, lemma] : exceptions_) lemmas_.insert(lemma);
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingLemmaDictionary, path.string());
  std::unordered_set<std::string> lemmas;
  std::unordered_map<std::string, std::string> exceptions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = detail::trim(line);
    if (l.empty() || l.front() == '#') continue;
    auto parts = detail::split(l, '\t');
    if (parts.size() > 2) {
      throw Error(ErrorCode::kBadRow, path.string() + ":" + std::to_string(line_no) +
                                          ": expected form<TAB>lemma");
    }
    std::string form(detail::trim(parts[0]));
    std::string lemma(parts.size() == 2 ? detail::trim(parts[1]) : detail::trim(parts[0]));
    if (form.empty() || lemma.empty()) {
      throw Error(ErrorCode::kBadRow, path.string() + ":" + std::to_string(line_no) + ": empty field");
    }
    if (form == lemma) {
      lemmas.insert(std::move(form));
    } else {
      exceptions[std::move(form)] = std::move(lemma);
    }
  }
  return Lemmatizer(std::move(lemmas), std::move(exceptions));
}

std::string Lemmatizer::lemmatize(const std::string& token) const {
  if (lemmas_.count(token)) return token;
  if (auto it = exceptions_.find(token); it != exceptions_.end()) return it->second;
  for (std::string& c : rule_candidates(token)) {
    if (lemmas_.count(c)) return c;
  }
  return token;
}

// ---------------------------------------------------------------------------

const TokenizedDoc* DocumentSet::find(const std::string& doc_id) const {
  auto it = id_index_.find(doc_id);
  return it == id_index_.end() ? nullptr : &documents[it->second];
}

std::size_t DocumentSet::position(const std::string& doc_id) const {
  auto it = id_index_.find(doc_id);
  return it == id_index_.end() ? std::string::npos : it->second;
}

void DocumentSet::add(TokenizedDoc doc) {
  const std::size_t pos = documents.size();
  if (!id_index_.emplace(doc.doc_id, pos).second) {
    throw Error(ErrorCode::kBadParams, "duplicate document id " + doc.doc_id);
  }
  owner_index[doc.owner_id].push_back(pos);
  documents.push_back(std::move(doc));
}

std::vector<std::string> process_text(std::string_view text, const LexicalResources& res) {
  if (res.stop_list == nullptr) throw Error(ErrorCode::kMissingStopList, "no stop list configured");
  if (res.lemmatizer == nullptr) {
    throw Error(ErrorCode::kMissingLemmaDictionary, "no lemma dictionary configured");
  }
  std::vector<std::string> tokens = remove_stop_words(tokenize(text), *res.stop_list);
  for (std::string& t : tokens) t = res.lemmatizer->lemmatize(t);
  // A lemma can itself be a stop word ("doing" -> "do").
  return remove_stop_words(tokens, *res.stop_list);
}

DocumentSet build_document_set(std::span<const textprep::CleanDocument> clean_docs,
                               const LexicalResources& res) {
  DocumentSet set;
  for (const textprep::CleanDocument& cd : clean_docs) {
    TokenizedDoc td;
    td.doc_id = cd.doc_id;
    td.owner_id = cd.owner_id;
    td.dataset_no = cd.dataset_no;
    td.parent_doc_id = cd.parent_doc_id;
    td.flagged_non_english = cd.flagged_non_english;
    td.tokens = process_text(cd.text, res);
    set.add(std::move(td));
  }
  return set;
}

}  // namespace egorank::lexproc

#include "paedgl/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

namespace paedgl {

namespace {
using ordered_json = nlohmann::ordered_json;
}

void validate_document(const Document& doc, std::size_t max_doc_len) {
  const std::size_t n = doc.clauses.size();
  if (doc.doc_id.empty())
    throw ArgumentError("document: empty doc_id");
  if (n == 0)
    throw ArgumentError("document '" + doc.doc_id + "': no clauses");
  if (n > max_doc_len)
    throw CapacityError("document '" + doc.doc_id + "': " + std::to_string(n) +
                        " clauses exceeds capacity " +
                        std::to_string(max_doc_len));
  if (doc.emotion_index >= n)
    throw ArgumentError("document '" + doc.doc_id +
                        "': emotion_index out of range");
  if (doc.gold_causes.size() != n)
    throw ArgumentError("document '" + doc.doc_id +
                        "': gold_causes length mismatch");
  bool any_cause = false;
  for (std::uint8_t y : doc.gold_causes) {
    if (y > 1)
      throw ArgumentError("document '" + doc.doc_id +
                          "': gold_causes entries must be 0/1");
    any_cause = any_cause || y == 1;
  }
  if (!any_cause)
    throw ArgumentError("document '" + doc.doc_id + "': no gold cause");
  for (const Clause& c : doc.clauses) {
    if (c.empty())
      throw ArgumentError("document '" + doc.doc_id + "': empty clause");
    for (const std::string& t : c) {
      if (t.empty())
        throw ArgumentError("document '" + doc.doc_id + "': empty token");
    }
  }
}

std::vector<int> relative_positions(const Document& doc, int window) {
  if (window < 1) throw ArgumentError("relative_positions: window must be >= 1");
  std::vector<int> out(doc.clauses.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    long long p = static_cast<long long>(i) -
                  static_cast<long long>(doc.emotion_index);
    out[i] = static_cast<int>(std::clamp<long long>(p, -window, window));
  }
  return out;
}

std::size_t position_class(int position, int window) {
  if (position < -window || position > window)
    throw IndexError("position_class: position " + std::to_string(position) +
                     " outside [-" + std::to_string(window) + ", +" +
                     std::to_string(window) + "]");
  return static_cast<std::size_t>(position + window);
}

int position_value(std::size_t cls, int window) {
  if (cls > static_cast<std::size_t>(2 * window))
    throw IndexError("position_value: class " + std::to_string(cls) +
                     " outside [0, " + std::to_string(2 * window) + "]");
  return static_cast<int>(cls) - window;
}

namespace {

[[noreturn]] void record_error(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

Document parse_record(const std::string& text, std::size_t line,
                      std::size_t max_doc_len) {
  ordered_json rec;
  try {
    rec = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    record_error(line, std::string("invalid record: ") + e.what());
  }
  if (!rec.is_object()) record_error(line, "record is not an object");

  Document doc;
  try {
    if (!rec.contains("doc_id")) record_error(line, "missing field doc_id");
    doc.doc_id = rec.at("doc_id").get<std::string>();

    if (!rec.contains("clauses")) record_error(line, "missing field clauses");
    for (const auto& clause : rec.at("clauses")) {
      doc.clauses.push_back(clause.get<Clause>());
    }

    if (!rec.contains("emotion_index"))
      record_error(line, "missing field emotion_index");
    const auto raw_emotion = rec.at("emotion_index").get<long long>();
    if (raw_emotion < 0) record_error(line, "emotion_index negative");
    doc.emotion_index = static_cast<std::size_t>(raw_emotion);

    if (!rec.contains("gold_causes"))
      record_error(line, "missing field gold_causes");
    for (const auto& y : rec.at("gold_causes")) {
      const auto v = y.get<long long>();
      if (v != 0 && v != 1) record_error(line, "gold_causes entry not 0/1");
      doc.gold_causes.push_back(static_cast<std::uint8_t>(v));
    }
  } catch (const ordered_json::exception& e) {
    record_error(line, std::string("field type error: ") + e.what());
  }

  try {
    validate_document(doc, max_doc_len);
  } catch (const Error& e) {
    record_error(line, e.what());
  }
  return doc;
}

}  // namespace

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  std::size_t max_doc_len) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  std::vector<Document> docs;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    docs.push_back(parse_record(text, line, max_doc_len));
  }
  return docs;
}

void save_corpus(const std::filesystem::path& path,
                 std::span<const Document> docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file: " + path.string());
  for (const Document& doc : docs) {
    ordered_json rec;
    rec["doc_id"] = doc.doc_id;
    rec["clauses"] = doc.clauses;
    rec["emotion_index"] = doc.emotion_index;
    rec["gold_causes"] = ordered_json::array();
    for (std::uint8_t y : doc.gold_causes) rec["gold_causes"].push_back(int(y));
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Vocabulary::Vocabulary() : tokens_{std::string(kUnkToken)} {
  ids_.emplace(tokens_[0], kUnkId);
}

Vocabulary::Vocabulary(std::vector<std::string> tokens_in_id_order)
    : tokens_(std::move(tokens_in_id_order)) {
  if (tokens_.empty() || tokens_[0] != kUnkToken)
    throw ArgumentError("Vocabulary: token list must start with UNK");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], i).second)
      throw ArgumentError("Vocabulary: duplicate token '" + tokens_[i] + "'");
  }
}

Vocabulary Vocabulary::build(std::span<const Document> docs,
                             std::size_t min_count) {
  if (docs.empty()) throw ArgumentError("build_vocab: empty corpus");
  std::map<std::string, std::size_t> counts;
  for (const Document& doc : docs) {
    for (const Clause& clause : doc.clauses) {
      for (const std::string& tok : clause) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, count] : counts) {
    if (count >= min_count && tok != kUnkToken) kept.emplace_back(tok, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> tokens{std::string(kUnkToken)};
  tokens.reserve(kept.size() + 1);
  for (auto& [tok, count] : kept) tokens.push_back(tok);
  return Vocabulary(std::move(tokens));
}

std::size_t Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token(std::size_t id) const {
  if (id >= tokens_.size())
    throw IndexError("Vocabulary: id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

}  // namespace paedgl

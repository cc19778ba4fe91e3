#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paedgl/errors.hpp"

namespace paedgl {

// Positions beyond +-kDefaultWindow share the boundary embedding.
inline constexpr int kDefaultWindow = 6;
// Documents longer than this are rejected (fixed DGL capacity).
inline constexpr std::size_t kDefaultMaxDocLen = 40;

using Clause = std::vector<std::string>;

struct Document {
  std::string doc_id;
  std::vector<Clause> clauses;
  std::size_t emotion_index = 0;
  std::vector<std::uint8_t> gold_causes;  // 0/1 per clause

  std::size_t size() const { return clauses.size(); }
};

// Throws ArgumentError when a Document invariant is violated.
void validate_document(const Document& doc,
                       std::size_t max_doc_len = kDefaultMaxDocLen);

// Position of clause i relative to the emotion clause, clipped to
// [-window, +window].
std::vector<int> relative_positions(const Document& doc,
                                    int window = kDefaultWindow);

// Bijection between position values [-window, +window] and class indices
// [0, 2*window].
std::size_t position_class(int position, int window);
int position_value(std::size_t cls, int window);

// Line-delimited corpus file I/O (see README for the record layout).
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  std::size_t max_doc_len = kDefaultMaxDocLen);
void save_corpus(const std::filesystem::path& path,
                 std::span<const Document> docs);

// Token <-> dense id mapping.  Id 0 is reserved for unknown tokens.
class Vocabulary {
 public:
  static constexpr std::size_t kUnkId = 0;
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Token list in id order; front() must be the UNK token.
  explicit Vocabulary(std::vector<std::string> tokens_in_id_order);

  // Tokens seen >= min_count times, ordered by (count desc, token asc).
  static Vocabulary build(std::span<const Document> docs,
                          std::size_t min_count = 1);

  std::size_t id(std::string_view token) const;  // kUnkId when absent
  const std::string& token(std::size_t id) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t, std::less<>> ids_;
};

}  // namespace paedgl

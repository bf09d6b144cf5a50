#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cogmap {

// Word -> dense vector of fixed dimension. Insertion order is preserved.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension);

  // Throws ValidationError on wrong length, non-finite or all-zero
  // components, or a duplicate word.
  void add(std::string word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool contains(std::string_view word) const;
  // Throws ValidationError naming the word when absent.
  std::span<const double> at(std::string_view word) const;
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Word2vec-style text: "<count> <dimension>" header, then "<word> <v1> ... <vD>".
EmbeddingTable parse_embeddings(std::string_view text);
EmbeddingTable load_embeddings(const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingTable& table);

enum class Split { Train, Validation };

std::string_view to_string(Split split);

struct LexiconEntry {
  std::string word;
  std::string category;
};

// Labeled word lists. Training order defines state indices 0..N-1.
struct Lexicon {
  std::vector<LexiconEntry> training;
  std::vector<LexiconEntry> validation;
  std::vector<std::string> categories;  // order of first appearance

  std::size_t state_count() const { return training.size(); }
  const std::vector<LexiconEntry>& entries(Split split) const {
    return split == Split::Train ? training : validation;
  }
  std::vector<std::string> training_words() const;
};

// CSV with header "word,category,split"; split is "train" or "validation".
Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon(const std::filesystem::path& path);

}  // namespace cogmap

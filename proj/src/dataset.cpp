#include "cogmap/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "cogmap/error.hpp"
#include "cogmap/successor.hpp"
#include "cogmap/text_io.hpp"
#include "cogmap/training_set.hpp"

namespace cogmap {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ValidationError("embedding dimension must be positive");
}

void EmbeddingTable::add(std::string word, std::vector<double> vector) {
  if (vector.size() != dimension_)
    throw ValidationError("word '" + word + "': expected " + std::to_string(dimension_) +
                          " components, got " + std::to_string(vector.size()));
  if (!std::all_of(vector.begin(), vector.end(), [](double v) { return std::isfinite(v); }))
    throw ValidationError("word '" + word + "': non-finite component");
  if (std::all_of(vector.begin(), vector.end(), [](double v) { return v == 0.0; }))
    throw ValidationError("word '" + word + "': zero vector");
  if (index_.contains(word)) throw ValidationError("duplicate word '" + word + "'");
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  vectors_.push_back(std::move(vector));
}

bool EmbeddingTable::contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

std::span<const double> EmbeddingTable::at(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) throw ValidationError("word '" + std::string(word) + "' not in embedding table");
  return vectors_[it->second];
}

namespace {

[[noreturn]] void embedding_error(std::size_t line_no, const std::string& what) {
  throw ValidationError("embeddings line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EmbeddingTable parse_embeddings(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) embedding_error(1, "missing header");

  auto header = split(trim(lines[0]), ' ');
  if (header.size() != 2) embedding_error(1, "malformed header, expected '<count> <dimension>'");
  auto count = parse_integer(header[0]);
  auto dim = parse_integer(header[1]);
  if (!count || !dim || *count < 0 || *dim <= 0)
    embedding_error(1, "malformed header, expected '<count> <dimension>'");

  EmbeddingTable table(static_cast<std::size_t>(*dim));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    while (!line.empty() && line.back() == ' ') line.remove_suffix(1);
    auto tokens = split(line, ' ');
    if (tokens.empty() || tokens[0].empty()) embedding_error(line_no, "missing word");
    if (tokens.size() - 1 != table.dimension())
      embedding_error(line_no, "wrong component count: expected " + std::to_string(table.dimension()) +
                                   ", got " + std::to_string(tokens.size() - 1));
    std::vector<double> v;
    v.reserve(table.dimension());
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      auto x = parse_double(tokens[k]);
      if (!x) embedding_error(line_no, "unparsable component '" + std::string(tokens[k]) + "'");
      if (!std::isfinite(*x)) embedding_error(line_no, "non-finite component");
      v.push_back(*x);
    }
    std::string word(tokens[0]);
    if (table.contains(word)) embedding_error(line_no, "duplicate word '" + word + "'");
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }))
      embedding_error(line_no, "zero vector for '" + word + "'");
    table.add(std::move(word), std::move(v));
  }
  if (table.size() != static_cast<std::size_t>(*count))
    embedding_error(1, "header declares " + std::to_string(*count) + " words, file has " +
                           std::to_string(table.size()));
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  return parse_embeddings(read_file(path));
}

std::string format_embeddings(const EmbeddingTable& table) {
  std::string out = std::to_string(table.size()) + " " + std::to_string(table.dimension()) + "\n";
  for (const auto& word : table.words()) {
    out += word;
    for (double v : table.at(word)) {
      out += ' ';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string_view to_string(Split split) { return split == Split::Train ? "train" : "validation"; }

std::vector<std::string> Lexicon::training_words() const {
  std::vector<std::string> out;
  out.reserve(training.size());
  for (const auto& e : training) out.push_back(e.word);
  return out;
}

Lexicon parse_lexicon(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != "word,category,split")
    throw ValidationError("lexicon line 1: header must be 'word,category,split'");

  Lexicon lex;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "lexicon line " + std::to_string(i + 1) + ": ";
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 3) throw ValidationError(where + "expected 3 columns");
    std::string word(trim(cells[0]));
    std::string category(trim(cells[1]));
    auto split_token = trim(cells[2]);
    if (word.empty()) throw ValidationError(where + "empty word");
    if (category.empty()) throw ValidationError(where + "empty category");
    if (!seen.insert(word).second) throw ValidationError(where + "duplicate word '" + word + "'");
    if (std::find(lex.categories.begin(), lex.categories.end(), category) == lex.categories.end())
      lex.categories.push_back(category);
    if (split_token == "train") {
      lex.training.push_back({std::move(word), std::move(category)});
    } else if (split_token == "validation") {
      lex.validation.push_back({std::move(word), std::move(category)});
    } else {
      throw ValidationError(where + "unknown split '" + std::string(split_token) + "'");
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) { return parse_lexicon(read_file(path)); }

ExampleSet build_examples(const EmbeddingTable& table, const Lexicon& lex, const SuccessorMatrix& sr,
                          Split split) {
  const std::size_t n = lex.state_count();
  if (sr.values.rows() != n || sr.values.cols() != n)
    throw ValidationError("successor matrix is " + std::to_string(sr.values.rows()) + "x" +
                          std::to_string(sr.values.cols()) + ", lexicon has " + std::to_string(n) +
                          " training states");
  const Matrix targets = normalize_rows(sr.values);

  ExampleSet out;
  const auto& entries = lex.entries(split);
  for (const auto& e : entries) {
    auto input = table.at(e.word);
    std::size_t state = 0;
    if (split == Split::Train) {
      state = out.words.size();
    } else {
      double best = -2.0;
      for (std::size_t s = 0; s < n; ++s) {
        const double c = cosine_similarity(input, table.at(lex.training[s].word));
        if (c > best) {
          best = c;
          state = s;
        }
      }
    }
    out.inputs.emplace_back(input.begin(), input.end());
    auto row = targets.row(state);
    out.targets.emplace_back(row.begin(), row.end());
    out.labels.push_back(e.category);
    out.words.push_back(e.word);
  }
  return out;
}

}  // namespace cogmap

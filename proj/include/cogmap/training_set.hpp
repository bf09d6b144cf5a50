#pragma once

#include <string>
#include <vector>

#include "cogmap/dataset.hpp"
#include "cogmap/successor.hpp"

namespace cogmap {

// Parallel arrays of network inputs and SR-derived target distributions.
struct ExampleSet {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> targets;
  std::vector<std::string> labels;
  std::vector<std::string> words;

  std::size_t size() const { return inputs.size(); }
};

// Train split: target i is the normalized SR row of state i, in lexicon order.
// Validation split: target is the normalized SR row of the training state whose
// embedding is most cosine-similar (lowest index on ties). Validation targets
// are diagnostic only and never used for fitting.
ExampleSet build_examples(const EmbeddingTable& table, const Lexicon& lex, const SuccessorMatrix& sr,
                          Split split);

}  // namespace cogmap

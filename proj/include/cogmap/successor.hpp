#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cogmap/dataset.hpp"
#include "cogmap/matrix.hpp"

namespace cogmap {

// Row-stochastic state-to-state transition probabilities.
struct TransitionMatrix {
  Matrix values;
  std::vector<std::string> state_words;

  std::size_t size() const { return values.rows(); }
};

// Truncated discounted successor representation sum_{k=0}^{horizon} gamma^k T^k.
struct SuccessorMatrix {
  double gamma = 0.0;
  int horizon = 0;
  Matrix values;
  std::vector<std::string> state_words;

  std::size_t size() const { return values.rows(); }
};

// (a.b) / (|a||b|). Throws ValidationError on zero norm or dimension mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct TransitionOptions {
  // Drop self-transitions before row normalization.
  bool zero_diagonal = false;
};

// Clamped cosine similarities between training words, each row normalized to 1.
TransitionMatrix build_transition_matrix(const EmbeddingTable& table, const Lexicon& lex,
                                         TransitionOptions options = {});

SuccessorMatrix successor_matrix(const TransitionMatrix& t, double gamma, int horizon);

// Divides each row by its sum. Throws ValidationError on a non-positive row sum.
Matrix normalize_rows(const Matrix& m);

struct OccupancyEstimate {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

// Monte Carlo estimate of E[sum_k gamma^k 1(s_k = s') | s_0 = start] from
// sampled trajectories of T. Independent of successor_matrix; used to check it.
OccupancyEstimate rollout_occupancy_oracle(const TransitionMatrix& t, double gamma, int horizon,
                                           std::size_t start, std::size_t samples, std::uint64_t seed);

// JSON envelopes: {"n", "stateWords", "values"} plus "gamma"/"horizon" for SR.
std::string transition_to_json(const TransitionMatrix& t);
TransitionMatrix transition_from_json(std::string_view text);
std::string successor_to_json(const SuccessorMatrix& m);
SuccessorMatrix successor_from_json(std::string_view text);

}  // namespace cogmap

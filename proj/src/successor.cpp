#include "cogmap/successor.hpp"

#include <cmath>
#include <json.hpp>

#include "cogmap/error.hpp"
#include "cogmap/rng.hpp"

namespace cogmap {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("cosine similarity: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine similarity: zero-norm vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

TransitionMatrix build_transition_matrix(const EmbeddingTable& table, const Lexicon& lex,
                                         TransitionOptions options) {
  const std::size_t n = lex.state_count();
  if (n == 0) throw ValidationError("lexicon has no training words");
  TransitionMatrix t{Matrix(n, n), lex.training_words()};

  std::vector<std::span<const double>> vecs;
  vecs.reserve(n);
  for (const auto& word : t.state_words) vecs.push_back(table.at(word));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        t.values(i, j) = options.zero_diagonal ? 0.0 : 1.0;
      } else {
        t.values(i, j) = std::max(0.0, cosine_similarity(vecs[i], vecs[j]));
      }
    }
    double sum = 0.0;
    for (double v : t.values.row(i)) sum += v;
    if (!(sum > 0.0))
      throw ValidationError("transition row for '" + t.state_words[i] +
                            "' has no positive similarity; cannot normalize");
    for (double& v : t.values.row(i)) v /= sum;
  }
  return t;
}

SuccessorMatrix successor_matrix(const TransitionMatrix& t, double gamma, int horizon) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0, 1]");
  if (horizon < 0) throw ValidationError("horizon must be non-negative");
  const std::size_t n = t.size();

  SuccessorMatrix m{gamma, horizon, Matrix::identity(n), t.state_words};
  if (gamma == 0.0) return m;

  Matrix power = Matrix::identity(n);
  double weight = 1.0;
  for (int k = 1; k <= horizon; ++k) {
    power = multiply(power, t.values);
    weight *= gamma;
    for (std::size_t i = 0; i < n * n; ++i) m.values.data()[i] += weight * power.data()[i];
  }
  return m;
}

Matrix normalize_rows(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double sum = 0.0;
    for (double v : out.row(i)) sum += v;
    if (!(sum > 0.0)) throw ValidationError("row " + std::to_string(i) + " has non-positive sum");
    for (double& v : out.row(i)) v /= sum;
  }
  return out;
}

OccupancyEstimate rollout_occupancy_oracle(const TransitionMatrix& t, double gamma, int horizon,
                                           std::size_t start, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = t.size();
  if (samples == 0) throw ValidationError("oracle needs at least one sample");
  if (start >= n) throw ValidationError("oracle start state out of range");

  // Per-trajectory discounted visit counts; accumulate first and second moments.
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0), visits(n, 0.0);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(visits.begin(), visits.end(), 0.0);
    std::size_t state = start;
    double weight = 1.0;
    visits[state] += weight;
    for (int k = 1; k <= horizon && gamma > 0.0; ++k) {
      const double u = rng.uniform();
      double acc = 0.0;
      std::size_t next = n - 1;
      for (std::size_t j = 0; j < n; ++j) {
        acc += t.values(state, j);
        if (u < acc) {
          next = j;
          break;
        }
      }
      // Guard against rounding in the cumulative sum landing on a zero-probability tail.
      while (t.values(state, next) == 0.0 && next > 0) --next;
      state = next;
      weight *= gamma;
      visits[state] += weight;
    }
    for (std::size_t j = 0; j < n; ++j) {
      sum[j] += visits[j];
      sum_sq[j] += visits[j] * visits[j];
    }
  }

  OccupancyEstimate est{std::vector<double>(n), std::vector<double>(n)};
  const double count = static_cast<double>(samples);
  for (std::size_t j = 0; j < n; ++j) {
    const double mean = sum[j] / count;
    const double var = std::max(0.0, sum_sq[j] / count - mean * mean);
    est.mean[j] = mean;
    est.standard_error[j] = samples > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;
  }
  return est;
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

Matrix matrix_from(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ValidationError("values must be an n x n array");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw ValidationError("values must be an n x n array");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename F>
auto with_json_errors(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed matrix JSON: ") + e.what());
  }
}

}  // namespace

std::string transition_to_json(const TransitionMatrix& t) {
  nlohmann::json j;
  j["n"] = t.size();
  j["stateWords"] = t.state_words;
  j["values"] = matrix_json(t.values);
  return j.dump(1) + "\n";
}

TransitionMatrix transition_from_json(std::string_view text) {
  auto j = parse_json(text);
  return with_json_errors([&] {
    const auto n = j.at("n").get<std::size_t>();
    TransitionMatrix t{matrix_from(j.at("values"), n), j.at("stateWords").get<std::vector<std::string>>()};
    if (t.state_words.size() != n) throw ValidationError("stateWords length differs from n");
    return t;
  });
}

std::string successor_to_json(const SuccessorMatrix& m) {
  nlohmann::json j;
  j["n"] = m.size();
  j["gamma"] = m.gamma;
  j["horizon"] = m.horizon;
  j["stateWords"] = m.state_words;
  j["values"] = matrix_json(m.values);
  return j.dump(1) + "\n";
}

SuccessorMatrix successor_from_json(std::string_view text) {
  auto j = parse_json(text);
  return with_json_errors([&] {
    const auto n = j.at("n").get<std::size_t>();
    SuccessorMatrix m{j.at("gamma").get<double>(), j.at("horizon").get<int>(), matrix_from(j.at("values"), n),
                      j.at("stateWords").get<std::vector<std::string>>()};
    if (m.state_words.size() != n) throw ValidationError("stateWords length differs from n");
    return m;
  });
}

}  // namespace cogmap

#pragma once

// Direct transcription of the GDV definition used as a test oracle: every
// unordered pair of points is visited once and routed to its intra-class or
// inter-class accumulator. Shares no code with cogmap::gdv.

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cogmap::testing {

inline double brute_force_gdv(const std::vector<std::vector<double>>& x, const std::vector<std::string>& labels) {
  const std::size_t n = x.size();
  const std::size_t dims = x[0].size();
  std::vector<std::vector<double>> s = x;
  for (std::size_t d = 0; d < dims; ++d) {
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i][d] / static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (x[i][d] - mu) * (x[i][d] - mu) / static_cast<double>(n);
    const double sigma = std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) s[i][d] = sigma > 0.0 ? (x[i][d] - mu) / sigma / 2.0 : 0.0;
  }

  std::map<std::string, std::pair<double, double>> intra;                     // class -> (sum, count)
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> inter;  // (a<b) -> (sum, count)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t d = 0; d < dims; ++d) sq += (s[i][d] - s[j][d]) * (s[i][d] - s[j][d]);
      const double dist = std::sqrt(sq);
      if (labels[i] == labels[j]) {
        intra[labels[i]].first += dist;
        intra[labels[i]].second += 1.0;
      } else {
        auto key = labels[i] < labels[j] ? std::make_pair(labels[i], labels[j]) : std::make_pair(labels[j], labels[i]);
        inter[key].first += dist;
        inter[key].second += 1.0;
      }
    }
  }
  double mean_intra = 0.0;
  for (const auto& [k, v] : intra) mean_intra += v.first / v.second;
  mean_intra /= static_cast<double>(intra.size());
  double mean_inter = 0.0;
  for (const auto& [k, v] : inter) mean_inter += v.first / v.second;
  mean_inter /= static_cast<double>(inter.size());
  return (mean_intra - mean_inter) / std::sqrt(static_cast<double>(dims));
}

}  // namespace cogmap::testing

#pragma once

#include <string>
#include <vector>

namespace cogmap {

struct LabeledPointSet {
  std::vector<std::vector<double>> points;
  std::vector<std::string> labels;
};

struct GdvReport {
  double gdv = 0.0;
  std::vector<std::string> classes;          // order of first appearance
  std::vector<double> mean_intra_per_class;  // one per class
  std::vector<double> mean_inter_per_pair;   // (0,1), (0,2), ..., (1,2), ...
  std::size_t dimension = 0;
};

// Per-dimension z-score with population sigma, times 1/2. Constant dimensions
// become zero.
std::vector<std::vector<double>> zscore_half(const std::vector<std::vector<double>>& points);

// Generalized Discrimination Value:
//   (1/sqrt(D)) * [ mean_l dIntra(C_l) - mean_{l<m} dInter(C_l, C_m) ]
// on half-z-scored points with Euclidean distances. 0 means full overlap,
// more negative means better separated. Throws ValidationError for fewer than
// two classes or a class with fewer than two points.
GdvReport gdv(const LabeledPointSet& set);

std::string gdv_report_to_json(const GdvReport& report);

}  // namespace cogmap

#include "cogmap/gdv.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "cogmap/error.hpp"
#include "cogmap/matrix.hpp"

namespace cogmap {

std::vector<std::vector<double>> zscore_half(const std::vector<std::vector<double>>& points) {
  if (points.empty()) return {};
  const std::size_t n = points.size();
  const std::size_t dims = points.front().size();
  std::vector<std::vector<double>> out(n, std::vector<double>(dims, 0.0));
  for (std::size_t d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (const auto& p : points) mean += p[d];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& p : points) var += (p[d] - mean) * (p[d] - mean);
    const double sigma = std::sqrt(var / static_cast<double>(n));
    if (sigma == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i][d] = 0.5 * (points[i][d] - mean) / sigma;
  }
  return out;
}

GdvReport gdv(const LabeledPointSet& set) {
  if (set.points.size() != set.labels.size())
    throw ValidationError("gdv: points and labels differ in length");
  if (set.points.empty()) throw ValidationError("gdv: empty point set");
  const std::size_t dims = set.points.front().size();
  if (dims == 0) throw ValidationError("gdv: points have no dimensions");
  for (const auto& p : set.points)
    if (p.size() != dims) throw ValidationError("gdv: points differ in dimension");

  GdvReport report;
  report.dimension = dims;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < set.labels.size(); ++i) {
    auto it = std::find(report.classes.begin(), report.classes.end(), set.labels[i]);
    if (it == report.classes.end()) {
      report.classes.push_back(set.labels[i]);
      members.emplace_back();
      it = report.classes.end() - 1;
    }
    members[static_cast<std::size_t>(it - report.classes.begin())].push_back(i);
  }
  const std::size_t classes = report.classes.size();
  if (classes < 2) throw ValidationError("gdv: need at least two classes");
  for (std::size_t l = 0; l < classes; ++l)
    if (members[l].size() < 2)
      throw ValidationError("gdv: class '" + report.classes[l] + "' has fewer than two points");

  const auto s = zscore_half(set.points);

  double intra_sum = 0.0;
  for (const auto& idx : members) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) sum += euclidean_distance(s[idx[i]], s[idx[j]]);
    const double nl = static_cast<double>(idx.size());
    const double mean = 2.0 * sum / (nl * (nl - 1.0));
    report.mean_intra_per_class.push_back(mean);
    intra_sum += mean;
  }

  double inter_sum = 0.0;
  for (std::size_t l = 0; l + 1 < classes; ++l) {
    for (std::size_t m = l + 1; m < classes; ++m) {
      double sum = 0.0;
      for (std::size_t i : members[l])
        for (std::size_t j : members[m]) sum += euclidean_distance(s[i], s[j]);
      const double mean = sum / static_cast<double>(members[l].size() * members[m].size());
      report.mean_inter_per_pair.push_back(mean);
      inter_sum += mean;
    }
  }

  const double L = static_cast<double>(classes);
  report.gdv = (intra_sum / L - 2.0 * inter_sum / (L * (L - 1.0))) / std::sqrt(static_cast<double>(dims));
  return report;
}

std::string gdv_report_to_json(const GdvReport& report) {
  nlohmann::json j;
  j["gdv"] = report.gdv;
  j["dimension"] = report.dimension;
  j["classes"] = report.classes;
  j["meanIntraPerClass"] = report.mean_intra_per_class;
  j["meanInterPerPair"] = report.mean_inter_per_pair;
  return j.dump(1) + "\n";
}

}  // namespace cogmap

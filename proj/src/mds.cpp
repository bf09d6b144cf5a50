#include "cogmap/mds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cogmap/error.hpp"

namespace cogmap {

DistanceMatrix pairwise_euclidean(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  for (const auto& p : points)
    if (p.size() != points.front().size()) throw ValidationError("pairwise distances: dimension mismatch");
  DistanceMatrix d{Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = euclidean_distance(points[i], points[j]);
      d.values(i, j) = v;
      d.values(j, i) = v;
    }
  }
  return d;
}

SymmetricEigen jacobi_eigen(const Matrix& input, double tolerance, int max_sweeps) {
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  double total = 0.0;
  for (double x : a.data()) total += x * x;
  const double threshold = tolerance * std::max(1.0, std::sqrt(total));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEigen out{std::vector<double>(n), Matrix(n, n), sweep};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double normalized_stress(const DistanceMatrix& d, const std::vector<std::vector<double>>& coordinates) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double diff = d.values(i, j) - euclidean_distance(coordinates[i], coordinates[j]);
      num += diff * diff;
      den += d.values(i, j) * d.values(i, j);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

namespace {

void check_distance_matrix(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (d.values.cols() != n) throw ValidationError("mds: distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (d.values(i, i) != 0.0) throw ValidationError("mds: distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d.values(i, j) != d.values(j, i)) throw ValidationError("mds: distance matrix is not symmetric");
      if (!(d.values(i, j) >= 0.0)) throw ValidationError("mds: negative or NaN distance");
    }
  }
}

void fix_signs(std::vector<std::vector<double>>& coords, std::size_t out_dim) {
  for (std::size_t k = 0; k < out_dim; ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (std::abs(coords[i][k]) > std::abs(coords[arg][k])) arg = i;
    if (coords[arg][k] < 0.0)
      for (auto& row : coords) row[k] = -row[k];
  }
}

}  // namespace

Projection classical_mds(const DistanceMatrix& d, std::size_t out_dim) {
  check_distance_matrix(d);
  const std::size_t n = d.size();
  if (out_dim == 0) throw ValidationError("mds: output dimension must be positive");
  if (n < out_dim + 1)
    throw ValidationError("mds: need at least " + std::to_string(out_dim + 1) + " points, got " + std::to_string(n));

  // B = -1/2 J D^2 J via row/column/grand means of D^2.
  Matrix b(n, n);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sq = d.values(i, j) * d.values(i, j);
      b(i, j) = sq;
      row_mean[i] += sq;
    }
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = -0.5 * (b(i, j) - row_mean[i] - row_mean[j] + grand);

  const auto eig = jacobi_eigen(b);
  Projection out;
  out.coordinates.assign(n, std::vector<double>(out_dim, 0.0));
  for (std::size_t k = 0; k < out_dim; ++k) {
    out.eigenvalues.push_back(eig.values[k]);
    const double scale = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) out.coordinates[i][k] = eig.vectors(i, k) * scale;
  }
  fix_signs(out.coordinates, out_dim);
  out.stress = normalized_stress(d, out.coordinates);
  return out;
}

Projection smacof_refine(const DistanceMatrix& d, const Projection& start, int max_iterations, double tolerance) {
  check_distance_matrix(d);
  const std::size_t n = d.size();
  if (start.coordinates.size() != n) throw ValidationError("smacof: start configuration size mismatch");
  Projection out = start;
  if (n == 0) return out;
  const std::size_t dims = start.coordinates.front().size();

  auto raw_stress = [&](const std::vector<std::vector<double>>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double diff = d.values(i, j) - euclidean_distance(x[i], x[j]);
        s += diff * diff;
      }
    return s;
  };

  double prev = raw_stress(out.coordinates);
  for (int it = 0; it < max_iterations; ++it) {
    // Guttman transform with unit weights: X' = (1/n) B(X) X.
    std::vector<std::vector<double>> next(n, std::vector<double>(dims, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      double diag = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dist = euclidean_distance(out.coordinates[i], out.coordinates[j]);
        const double bij = dist > 0.0 ? -d.values(i, j) / dist : 0.0;
        diag -= bij;
        for (std::size_t k = 0; k < dims; ++k) next[i][k] += bij * out.coordinates[j][k];
      }
      for (std::size_t k = 0; k < dims; ++k) next[i][k] += diag * out.coordinates[i][k];
    }
    for (auto& row : next)
      for (double& v : row) v /= static_cast<double>(n);
    const double cur = raw_stress(next);
    out.coordinates = std::move(next);
    if (prev - cur <= tolerance * std::max(prev, 1e-300)) break;
    prev = cur;
  }
  fix_signs(out.coordinates, dims);
  out.stress = normalized_stress(d, out.coordinates);
  return out;
}

}  // namespace cogmap

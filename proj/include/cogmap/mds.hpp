#pragma once

#include <string>
#include <vector>

#include "cogmap/matrix.hpp"

namespace cogmap {

// Symmetric, non-negative, zero diagonal.
struct DistanceMatrix {
  Matrix values;
  std::size_t size() const { return values.rows(); }
};

struct Projection {
  std::vector<std::vector<double>> coordinates;  // one row per point, outDim columns
  std::vector<double> eigenvalues;               // top outDim, descending, before clamping
  double stress = 0.0;
};

DistanceMatrix pairwise_euclidean(const std::vector<std::vector<double>>& points);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// tolerance * max(1, |A|_F), or max_sweeps is reached.
SymmetricEigen jacobi_eigen(const Matrix& a, double tolerance = 1e-12, int max_sweeps = 100);

// sqrt(sum_{i<j}(d_ij - dhat_ij)^2 / sum_{i<j} d_ij^2); 0 when all d_ij are 0.
double normalized_stress(const DistanceMatrix& d, const std::vector<std::vector<double>>& coordinates);

// Torgerson scaling: B = -1/2 J D^2 J, top out_dim eigenpairs, coordinates
// scaled by sqrt(max(lambda, 0)). Each column's largest-magnitude entry is
// made positive.
Projection classical_mds(const DistanceMatrix& d, std::size_t out_dim = 2);

// Guttman-transform iterations (SMACOF) starting from `start`; stops when the
// raw stress improves by less than `tolerance` relative.
Projection smacof_refine(const DistanceMatrix& d, const Projection& start, int max_iterations = 300,
                         double tolerance = 1e-9);

}  // namespace cogmap

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cogmap/error.hpp"
#include "cogmap/mds.hpp"
#include "test_util.hpp"

namespace cogmap {
namespace {

std::vector<std::vector<double>> random_plane(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
  return pts;
}

void expect_distances_recovered(const DistanceMatrix& d, const Projection& p, double tol) {
  const auto back = pairwise_euclidean(p.coordinates);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) EXPECT_NEAR(back.values(i, j), d.values(i, j), tol);
}

TEST(Pairwise, Examples) {
  EXPECT_EQ(pairwise_euclidean({{1.0, 2.0}}).values, Matrix(1, 1));
  const auto d = pairwise_euclidean({{0, 0}, {3, 4}});
  EXPECT_EQ(d.values(0, 1), 5.0);
  EXPECT_EQ(d.values(1, 0), 5.0);
  const auto line = pairwise_euclidean({{0}, {1}, {3}});
  EXPECT_EQ(line.values(0, 1), 1.0);
  EXPECT_EQ(line.values(0, 2), 3.0);
  EXPECT_EQ(line.values(1, 2), 2.0);
  EXPECT_THROW(pairwise_euclidean({{0, 0}, {1}}), ValidationError);
}

TEST(Jacobi, MatchesEigenSelfAdjointSolver) {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    Matrix a(n, n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double v = rng.normal();
        a(i, j) = a(j, i) = v;
        e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      }
    const auto mine = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(e);
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_NEAR(mine.values[k], ref.eigenvalues()(static_cast<Eigen::Index>(n - 1 - k)), 1e-10);
    // A v = lambda v for each returned pair.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a(i, j) * mine.vectors(j, k);
        EXPECT_NEAR(av, mine.values[k] * mine.vectors(i, k), 1e-9);
      }
  }
}

TEST(ClassicalMds, ExactPlanarConfigurations) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = pairwise_euclidean(random_plane(rng, 10));
    const auto p = classical_mds(d, 2);
    EXPECT_LT(p.stress, 1e-9);
    expect_distances_recovered(d, p, 1e-8);
    EXPECT_GE(p.eigenvalues[0], p.eigenvalues[1]);
  }
}

TEST(ClassicalMds, UnitSquare) {
  const auto p = classical_mds(pairwise_euclidean({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  std::vector<double> recovered;
  const auto back = pairwise_euclidean(p.coordinates);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) recovered.push_back(back.values(i, j));
  std::sort(recovered.begin(), recovered.end());
  const std::vector<double> expected{1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0)};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(recovered[k], expected[k], 1e-9);
}

TEST(ClassicalMds, RegularSimplexCannotBeFlattened) {
  DistanceMatrix d{Matrix(4, 4, 1.0)};
  for (std::size_t i = 0; i < 4; ++i) d.values(i, i) = 0.0;
  const auto p = classical_mds(d);
  EXPECT_GT(p.stress, 0.05);
  // Three equal positive eigenvalues (the simplex spans 3-D); only two are kept.
  EXPECT_NEAR(p.eigenvalues[0], p.eigenvalues[1], 1e-12);
}

TEST(ClassicalMds, RigidMotionLeavesRecoveredDistances) {
  Rng rng(29);
  const auto pts = random_plane(rng, 12);
  const double angle = 0.83, tx = 4.0, ty = -9.5;
  std::vector<std::vector<double>> moved;
  for (const auto& p : pts)
    moved.push_back({std::cos(angle) * p[0] - std::sin(angle) * p[1] + tx,
                     std::sin(angle) * p[0] + std::cos(angle) * p[1] + ty});
  const auto a = pairwise_euclidean(classical_mds(pairwise_euclidean(pts)).coordinates);
  const auto b = pairwise_euclidean(classical_mds(pairwise_euclidean(moved)).coordinates);
  for (std::size_t i = 0; i < a.values.data().size(); ++i) EXPECT_NEAR(a.values.data()[i], b.values.data()[i], 1e-9);
}

TEST(ClassicalMds, HigherDimensionalInputOrderingAndDeterminism) {
  Rng rng(31);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 30; ++i) pts.push_back(testing::random_vector(rng, 6));
  const auto d = pairwise_euclidean(pts);
  const auto p = classical_mds(d);
  const auto q = classical_mds(d);
  EXPECT_EQ(p.coordinates, q.coordinates);
  double var0 = 0.0, var1 = 0.0;
  for (const auto& c : p.coordinates) {
    var0 += c[0] * c[0];
    var1 += c[1] * c[1];
  }
  EXPECT_GE(var0, var1);
  EXPECT_GT(p.stress, 0.0);
  // Sign convention: largest-magnitude entry of each column is positive.
  for (std::size_t k = 0; k < 2; ++k) {
    const auto it = std::max_element(p.coordinates.begin(), p.coordinates.end(),
                                     [k](const auto& x, const auto& y) { return std::abs(x[k]) < std::abs(y[k]); });
    EXPECT_GT((*it)[k], 0.0);
  }
}

TEST(ClassicalMds, Errors) {
  EXPECT_THROW(classical_mds(pairwise_euclidean({{0, 0}, {1, 1}}), 2), ValidationError);
  DistanceMatrix asym{Matrix(3, 3, 1.0)};
  for (std::size_t i = 0; i < 3; ++i) asym.values(i, i) = 0.0;
  asym.values(0, 1) = 2.0;
  EXPECT_THROW(classical_mds(asym), ValidationError);
}

TEST(Smacof, DoesNotIncreaseStress) {
  Rng rng(37);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(testing::random_vector(rng, 5));
  const auto d = pairwise_euclidean(pts);
  const auto start = classical_mds(d);
  const auto refined = smacof_refine(d, start);
  EXPECT_LE(refined.stress, start.stress + 1e-12);
  EXPECT_EQ(refined.coordinates.size(), pts.size());
}

}  // namespace
}  // namespace cogmap

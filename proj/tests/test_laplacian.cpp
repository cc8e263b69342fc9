#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "connsync/error.hpp"
#include "connsync/frustration.hpp"
#include "connsync/generators.hpp"
#include "connsync/laplacian.hpp"
#include "support/oracles.hpp"

using namespace connsync;
using testing_support::jacobi_eigen;
using testing_support::random_matrix;

namespace {

VertexField random_field(const ConnectionGraph& g, std::uint64_t seed) {
  return VertexField(g.vertex_count(), g.dim(),
                     random_matrix(static_cast<Eigen::Index>(g.vertex_count() * g.dim()), 1, seed).col(0));
}

std::vector<ConnectionGraph> sample_graphs() {
  std::vector<ConnectionGraph> out;
  for (std::uint64_t seed = 0; seed < 8; ++seed) out.push_back(outlier_noise(8, 1 + seed % 3, 0.5, 0.3, seed).graph);
  out.push_back(ring(9, 2).graph);
  out.push_back(rainbow(10, 1).graph);
  out.push_back(two_cliques_o2(4));
  out.push_back(testing_support::odd_triangle());
  return out;
}

}  // namespace

TEST(Build, SingleEdge) {
  const ConnectionGraph g = testing_support::path_graph(2, 1.0);
  Matrix expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(normalized_connection_laplacian(g).isApprox(expected, 1e-15));
}

TEST(Build, MatchesHandAssembly) {
  for (const ConnectionGraph& g : sample_graphs()) {
    const LaplacianPair p = build_laplacians(g);
    EXPECT_LE((p.l1_normalized - testing_support::dense_normalized_l1(g)).norm(), 1e-12);
    EXPECT_LE((p.l0_normalized - testing_support::dense_normalized_l0(g)).norm(), 1e-12);
    EXPECT_LE((p.l1_normalized - p.l1_normalized.transpose()).norm(), 1e-12);
    EXPECT_EQ(p.degrees, testing_support::dense_degrees(g));
  }
}

TEST(Build, SpectraInUnitInterval) {
  for (const ConnectionGraph& g : sample_graphs()) {
    const auto l1 = jacobi_eigen(normalized_connection_laplacian(g)).values;
    const auto l0 = jacobi_eigen(normalized_graph_laplacian(g)).values;
    EXPECT_GE(l1.minCoeff(), -1e-9);
    EXPECT_LE(l1.maxCoeff(), 2.0 + 1e-9);
    EXPECT_GE(l0.minCoeff(), -1e-9);
    EXPECT_LE(l0.maxCoeff(), 2.0 + 1e-9);
  }
}

TEST(Build, ConsistentRing4HasDoubleNullspace) {
  const Matrix id = Matrix::Identity(2, 2);
  const ConnectionGraph g(4, 2, {{0, 1, 1, id}, {1, 2, 1, id}, {2, 3, 1, id}, {0, 3, 1, id}});
  const auto values = jacobi_eigen(normalized_connection_laplacian(g)).values;
  EXPECT_NEAR(values[0], 0.0, 1e-12);
  EXPECT_NEAR(values[1], 0.0, 1e-12);
  EXPECT_GT(values[2], 0.1);
}

TEST(Build, OddTriangleIsFrustrated) {
  const auto values = jacobi_eigen(normalized_connection_laplacian(testing_support::odd_triangle())).values;
  EXPECT_GT(values[0], 0.1);
}

TEST(Build, InvalidGraphThrows) {
  const ConnectionGraph g(3, 1, {{0, 1, 1.0, Matrix::Identity(1, 1)}});
  EXPECT_THROW(build_laplacians(g), ValidationError);
}

TEST(QuadraticForm, ConstantFieldOnConsistentGraph) {
  const ConnectionGraph g = testing_support::complete_graph(5, 2);
  Vector data(10);
  for (int v = 0; v < 5; ++v) data.segment(2 * v, 2) = Eigen::Vector2d(0.3, -1.2);
  EXPECT_NEAR(quadratic_form_l1(g, VertexField(5, 2, data)), 0.0, 1e-15);
}

TEST(QuadraticForm, WeightedSingleEdge) {
  const ConnectionGraph g = testing_support::path_graph(2, 2.0);
  EXPECT_DOUBLE_EQ(quadratic_form_l1(g, VertexField(2, 1, Eigen::Vector2d(1, -1))), 8.0);
}

TEST(QuadraticForm, MatchesMatrixPath) {
  for (const ConnectionGraph& g : sample_graphs()) {
    const Vector deg = raw_degrees(g);
    const Matrix l1 = normalized_connection_laplacian(g);
    const Matrix big_l1 = connection_laplacian(g);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const VertexField x = random_field(g, seed);
      const Vector z = whiten(x, deg);
      const double edge_sum = quadratic_form_l1(g, x);
      EXPECT_NEAR(edge_sum, z.dot(l1 * z), 1e-9 * std::max(1.0, edge_sum));
      EXPECT_NEAR(edge_sum, x.data().dot(big_l1 * x.data()), 1e-9 * std::max(1.0, edge_sum));
      const Vector f = random_matrix(static_cast<Eigen::Index>(g.vertex_count()), 1, seed + 50).col(0);
      EXPECT_NEAR(quadratic_form_l0(g, f), f.dot(graph_laplacian(g) * f), 1e-9 * std::max(1.0, f.squaredNorm()));
    }
  }
}

TEST(QuadraticForm, ShapeErrors) {
  const ConnectionGraph g = ring(4, 2).graph;
  EXPECT_THROW(quadratic_form_l1(g, VertexField(4, 1)), DimensionError);
  EXPECT_THROW(quadratic_form_l0(g, Vector::Zero(3)), DimensionError);
}

TEST(Whiten, RoundTrip) {
  const ConnectionGraph g = outlier_noise(7, 3, 0.6, 0.2, 9).graph;
  const Vector deg = raw_degrees(g);
  const VertexField x = random_field(g, 2);
  EXPECT_TRUE(unwhiten(whiten(x, deg), deg, 3).data().isApprox(x.data(), 1e-14));
}

TEST(BottomSpectrum, ConsistentInstanceNullspace) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const ConnectionGraph g = consistent_random(10, d, 0.5, 3 + d).graph;
    const SpectralResult s = bottom_spectrum(g, SpectrumKind::connection, static_cast<Eigen::Index>(d + 1));
    int null_count = 0;
    for (Eigen::Index k = 0; k < s.lambdas.size(); ++k) null_count += s.lambdas[k] <= 1e-9;
    EXPECT_EQ(null_count, static_cast<int>(d));
    for (std::size_t k = 0; k < d; ++k) EXPECT_LE(s.lambdas[static_cast<Eigen::Index>(k)], 1e-10);
  }
}

TEST(BottomSpectrum, RingPlainSecondEigenvalue) {
  for (std::size_t n : {5u, 8u, 16u}) {
    const SpectralResult s = bottom_spectrum(ring(n, 1).graph, SpectrumKind::plain, 2);
    EXPECT_NEAR(s.lambdas[0], 0.0, 1e-10);
    EXPECT_NEAR(s.lambdas[1], 1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n)), 1e-10);
    EXPECT_TRUE(s.x_vectors.empty());
  }
}

TEST(BottomSpectrum, RingConnectionBottom) {
  for (std::size_t n : {6u, 11u}) {
    const SpectralResult s = bottom_spectrum(ring(n, 2).graph, SpectrumKind::connection, 2);
    const double expected = 1.0 - std::cos(std::numbers::pi / static_cast<double>(n));
    EXPECT_NEAR(s.lambdas[0], expected, 1e-10);
    EXPECT_NEAR(s.lambdas[1], expected, 1e-10);
  }
}

TEST(BottomSpectrum, DisconnectedPlainGap) {
  const SpectralResult s = bottom_spectrum(two_cliques_o2(3), SpectrumKind::plain, 2);
  EXPECT_LE(s.lambdas[1], 1e-10);
  EXPECT_LE(spectral_gap(two_cliques_o2(3)), 1e-10);
}

TEST(BottomSpectrum, UnwhitenedVectorsAreD1OrthogonalWithEtaEqualLambda) {
  for (const ConnectionGraph& g : sample_graphs()) {
    const auto k = static_cast<Eigen::Index>(g.dim());
    const SpectralResult s = bottom_spectrum(g, SpectrumKind::connection, k);
    const Vector deg = raw_degrees(g);
    ASSERT_EQ(s.x_vectors.size(), static_cast<std::size_t>(k));
    for (Eigen::Index a = 0; a < k; ++a) {
      EXPECT_NEAR(eta(g, s.x_vectors[a]).value, s.lambdas[a], 1e-8);
      for (Eigen::Index b = a + 1; b < k; ++b) EXPECT_NEAR(d1_inner(s.x_vectors[a], s.x_vectors[b], deg), 0.0, 1e-9);
    }
  }
}

TEST(BottomSpectrum, RangeErrors) {
  const ConnectionGraph g = ring(4, 2).graph;
  EXPECT_THROW(bottom_spectrum(g, SpectrumKind::connection, 9), DimensionError);
  EXPECT_THROW(bottom_spectrum(g, SpectrumKind::plain, 5), DimensionError);
}

TEST(Rayleigh, LambdaOneIsALowerBound) {
  for (const ConnectionGraph& g : sample_graphs()) {
    const double lambda1 = bottom_spectrum(g, SpectrumKind::connection, 1).lambdas[0];
    for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_GE(eta(g, random_field(g, seed)).value, lambda1 - 1e-9);
  }
}

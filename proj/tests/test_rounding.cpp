#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "connsync/frustration.hpp"
#include "connsync/generators.hpp"
#include "connsync/laplacian.hpp"
#include "connsync/linalg.hpp"
#include "connsync/rounding.hpp"
#include "support/oracles.hpp"

using namespace connsync;
using testing_support::random_matrix;

namespace {

constexpr double kTol = 1e-9;

VertexField random_field(const ConnectionGraph& g, std::uint64_t seed) {
  return VertexField(g.vertex_count(), g.dim(),
                     random_matrix(static_cast<Eigen::Index>(g.vertex_count() * g.dim()), 1, seed).col(0));
}

double nan_if_zero(const ConnectionGraph& g, const Vector& x) {
  if (x.isZero()) return std::numeric_limits<double>::quiet_NaN();
  return testing_support::dense_eta(g, x);
}

double oracle_eta_star(const ConnectionGraph& g) {
  return testing_support::enumerate_min(g.vertex_count(), {-1.0, 0.0, 1.0},
                                        [&](const Vector& x) { return nan_if_zero(g, x); });
}

double oracle_eta(const ConnectionGraph& g) {
  return testing_support::enumerate_min(g.vertex_count(), {-1.0, 1.0},
                                        [&](const Vector& x) { return testing_support::dense_eta(g, x); });
}

ConnectionGraph conjugated(const ConnectionGraph& g, const Matrix& r) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.rho = r * e.rho * r.transpose();
  return ConnectionGraph(g.vertex_count(), g.dim(), std::move(edges));
}

}  // namespace

TEST(BoundFormulas, Constants) {
  EXPECT_DOUBLE_EQ(partial_sphere_bound(0.02, 1), std::sqrt(8 * 0.02));
  EXPECT_DOUBLE_EQ(partial_sphere_bound(0.02, 3), std::sqrt(10 * 0.02));
  EXPECT_DOUBLE_EQ(full_sphere_bound(0.02, 0.5), 44 * 0.02 / 0.5);
  EXPECT_DOUBLE_EQ(orthogonal_bound(0.03, 0.5, 2), 1026 * 8 * 0.03 / 0.5);
  EXPECT_DOUBLE_EQ(polar_rounding_bound(0.03, 0.5, 2), (1.0 + 1024 * 8) * 0.03 / 0.5);
  EXPECT_DOUBLE_EQ(partial_sphere_l1_bound(0.02), std::sqrt(10 * 0.02));
  EXPECT_DOUBLE_EQ(full_sphere_l1_bound(0.02, 0.5), 2 * std::sqrt(22 * 0.02 / 0.5));
  EXPECT_DOUBLE_EQ(orthogonal_l1_bound(0.03, 0.5, 2), 12 * std::sqrt(57 * 2 * 0.03 / 0.5));
  EXPECT_TRUE(std::isinf(full_sphere_bound(0.02, 1e-11)));
  EXPECT_TRUE(std::isinf(orthogonal_bound(0.02, 0.0, 2)));
  EXPECT_TRUE(std::isinf(orthogonal_l1_bound(0.02, 0.0, 2)));
  // Round-off can push a null eigenvalue slightly negative.
  EXPECT_EQ(partial_sphere_bound(-1e-17, 2), 0.0);
}

TEST(Sweep, CandidatesAscendingDistinctNonzero) {
  const ConnectionGraph g = outlier_noise(12, 2, 0.5, 0.2, 3).graph;
  Vector data = random_field(g, 1).data();
  data.segment(4, 2).setZero();
  data.segment(6, 2) = data.segment(8, 2);  // tie in block norms
  const auto candidates = sweep_candidates(g, VertexField(12, 2, data));
  EXPECT_EQ(candidates.size(), 10u);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    EXPECT_FALSE(candidates[k].field.is_zero());
    EXPECT_NEAR(candidates[k].eta, eta(g, candidates[k].field).value, 1e-15);
    EXPECT_NEAR(candidates[k].eta_l1, eta_l1(g, candidates[k].field), 1e-15);
    if (k > 0) EXPECT_LT(candidates[k - 1].threshold, candidates[k].threshold);
  }
}

TEST(Sweep, TiesPreferSmallestThreshold) {
  // On a consistent path every candidate has eta = 0.
  const ConnectionGraph g = testing_support::path_graph(4, 1.0);
  const auto candidates = sweep_candidates(g, VertexField(4, 1, Eigen::Vector4d(0.5, 1, 2, 3)));
  EXPECT_EQ(best_by_eta(candidates).threshold, candidates.front().threshold);
}

TEST(Sweep, LemmaBoundsOnArbitraryFields) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ConnectionGraph g = outlier_noise(10, 1 + seed % 3, 0.5, 0.3, seed).graph;
    const VertexField x = random_field(g, seed);
    const double c = g.dim() == 1 ? 8.0 : 10.0;
    const auto candidates = sweep_candidates(g, x);
    const double rhs = std::sqrt(c * eta(g, x).value);
    EXPECT_LE(best_by_eta(candidates).eta, rhs + kTol);
    EXPECT_LE(best_by_eta_l1(candidates).eta_l1, rhs + kTol);
  }
}

TEST(RoundToSphere, ZeroBlockBecomesE1) {
  const VertexField x(2, 3, (Vector(6) << 0, 0, 0, 0, 3, 4).finished());
  const VertexField v = round_to_sphere(x);
  EXPECT_EQ(v.block(0), Eigen::Vector3d(1, 0, 0));
  EXPECT_TRUE(v.block(1).isApprox(Eigen::Vector3d(0, 0.6, 0.8)));
}

TEST(PartialSphere, ConsistentInstance) {
  const ConnectionGraph g = consistent_random(12, 2, 0.5, 8).graph;
  const SyncSolution s = sync_partial_sphere(g);
  EXPECT_LE(s.achieved, kTol);
  for (std::size_t v = 0; v < 12; ++v) EXPECT_NEAR(s.field().block(v).norm(), 1.0, 1e-12);
}

TEST(PartialSphere, RingCandidatesAreOrderOneOverN) {
  for (std::size_t n : {8u, 16u, 33u}) {
    const double floor = 1.0 / (2.0 * static_cast<double>(n)) - 1e-12;
    // d = 1: every sweep candidate is a +-1/0 field on a frustrated cycle.
    const RingInstance r1 = ring(n, 1);
    const SpectralResult s = bottom_spectrum(r1.graph, SpectrumKind::connection, 1);
    for (const SweepCandidate& c : sweep_candidates(r1.graph, s.x_vectors[0])) EXPECT_GE(c.eta, floor);
    // Thresholds of the e1-aligned test field, in any dimension.
    const RingInstance r2 = ring(n, 2);
    for (double u = 0.01; u < 1.0; u += 0.01) {
      const VertexField t = threshold(r2.test_field, u);
      if (!t.is_zero()) EXPECT_GE(eta(r2.graph, t).value, floor);
    }
  }
}

TEST(PartialSphere, RingInTwoDimensionsAdmitsARotatingField) {
  // x_k = (cos(pi k/n), sin(pi k/n)) turns by pi around the cycle and absorbs
  // the -I edge, so eta = 1 - cos(pi/n) = lambda_1: no 1/n floor for d >= 2.
  const std::size_t n = 33;
  const RingInstance r = ring(n, 2);
  Vector data(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(n);
    data.segment(static_cast<Eigen::Index>(2 * k), 2) = Eigen::Vector2d(std::cos(t), std::sin(t));
  }
  const double lambda1 = 1.0 - std::cos(std::numbers::pi / static_cast<double>(n));
  EXPECT_NEAR(eta(r.graph, VertexField(n, 2, data)).value, lambda1, 1e-12);
  EXPECT_LE(sync_partial_sphere(r.graph).achieved, std::sqrt(10.0 * lambda1));
}

TEST(PartialSphere, DominatesOracleAndMeetsCertificate) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ConnectionGraph g = testing_support::random_signed_graph(3 + seed % 6, 0.6, seed);
    const SyncSolution s = sync_partial_sphere(g);
    const double oracle = oracle_eta_star(g);
    EXPECT_GE(s.achieved, oracle - kTol);
    EXPECT_LE(s.achieved, s.certificate.bound + kTol);
    EXPECT_LE(oracle, std::sqrt(8.0 * std::max(0.0, s.certificate.lambdas[0])) + kTol);
    EXPECT_GE(oracle, s.certificate.lambdas[0] - kTol);
  }
}

TEST(FullSphere, ConsistentAndOracle) {
  EXPECT_LE(sync_full_sphere(consistent_random(10, 3, 0.6, 2).graph).achieved, kTol);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ConnectionGraph g = testing_support::random_signed_graph(3 + seed % 6, 0.6, 100 + seed);
    const SyncSolution s = sync_full_sphere(g);
    EXPECT_GE(s.achieved, oracle_eta(g) - kTol);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) EXPECT_NEAR(s.field().block(v).norm(), 1.0, 1e-12);
  }
}

TEST(FullSphere, CertificateOnNoisyInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ConnectionGraph g = outlier_noise(11, 2, 0.5, 0.1, seed).graph;
    const SyncSolution s = sync_full_sphere(g);
    EXPECT_FALSE(s.certificate.vacuous);
    EXPECT_LE(s.achieved, 44.0 * s.certificate.lambdas[0] / s.certificate.spectral_gap + kTol);
    EXPECT_LE(s.achieved_l1, s.certificate.l1_bound + kTol);
  }
}

TEST(Orthogonal, ConsistentRecovery) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const ConnectionGraph g = consistent_random(14, d, 0.4, 70 + d).graph;
    const SyncSolution s = sync_orthogonal(g);
    EXPECT_LE(s.achieved, kTol);
    EXPECT_LE(max_edge_discrepancy(g, s.potential()), 1e-6);
  }
}

TEST(Orthogonal, TwoCliquesAreFrustratedDespiteNullSpace) {
  const ConnectionGraph g = two_cliques_o2(5);
  const SyncSolution s = sync_orthogonal(g);
  EXPECT_LE(s.certificate.lambdas[1], 1e-10);
  EXPECT_GT(s.achieved, 0.01);
  EXPECT_TRUE(s.certificate.vacuous);
  EXPECT_TRUE(std::isinf(s.certificate.bound));
}

TEST(Orthogonal, LowerBoundAgainstOracleInOneDimension) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ConnectionGraph g = testing_support::random_signed_graph(3 + seed % 6, 0.6, 200 + seed);
    const SyncSolution s = sync_orthogonal(g);
    // For d = 1 a potential is a +-1 field and nu equals its eta.
    const double oracle = oracle_eta(g);
    EXPECT_LE(s.certificate.lambdas.sum(), oracle + kTol);
    EXPECT_GE(s.achieved, oracle - kTol);
  }
}

TEST(Orthogonal, CertificatesOnNoisyInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const ConnectionGraph g = outlier_noise(10, d, 0.6, 0.1, seed).graph;
    const SyncSolution s = sync_orthogonal(g);
    const double lsum = s.certificate.lambdas.sum();
    EXPECT_LE(s.achieved, s.certificate.bound + kTol);
    EXPECT_LE(s.achieved, polar_rounding_bound(lsum, s.certificate.spectral_gap, d) + kTol);
    EXPECT_LE(s.achieved_l1, s.certificate.l1_bound + kTol);
  }
}

TEST(Synchronize, GaugeEquivariance) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ConnectionGraph g = outlier_noise(9, 3, 0.6, 0.2, seed).graph;
    const ConnectionGraph h = conjugated(g, haar_orthogonal(3, rng));
    for (SyncMode mode : {SyncMode::partial_sphere, SyncMode::full_sphere, SyncMode::orthogonal_group}) {
      EXPECT_NEAR(synchronize(g, mode).achieved, synchronize(h, mode).achieved, 1e-9) << to_string(mode);
    }
  }
}

TEST(Synchronize, ModeNames) {
  EXPECT_EQ(to_string(SyncMode::partial_sphere), "partial");
  EXPECT_EQ(to_string(SyncMode::full_sphere), "full");
  EXPECT_EQ(to_string(SyncMode::orthogonal_group), "od");
}

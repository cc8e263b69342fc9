#include <gtest/gtest.h>

#include <cmath>

#include "connsync/error.hpp"
#include "connsync/frustration.hpp"
#include "connsync/generators.hpp"
#include "connsync/laplacian.hpp"
#include "connsync/oracle.hpp"
#include "connsync/rounding.hpp"

using namespace connsync;

namespace {

int count_negative_identity(const ConnectionGraph& g) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  int count = 0;
  for (const Edge& e : g.edges()) count += e.rho == -Matrix::Identity(d, d);
  return count;
}

}  // namespace

TEST(Ring, FourVerticesOneFlippedEdge) {
  const RingInstance r = ring(4, 2);
  EXPECT_EQ(r.graph.edges().size(), 4u);
  EXPECT_EQ(count_negative_identity(r.graph), 1);
  EXPECT_TRUE(validate(r.graph).empty());
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_DOUBLE_EQ(r.test_field.block(k)[0], 2.0 * static_cast<double>(k + 1) / 4.0 - 1.0);
    EXPECT_EQ(r.test_field.block(k)[1], 0.0);
  }
}

TEST(Ring, TestFieldFrustrationScalesAsInverseSquare) {
  std::vector<double> scaled_eta;
  for (std::size_t n : {16u, 32u, 64u, 128u}) {
    const RingInstance r = ring(n, 2);
    const double dn = static_cast<double>(n);
    scaled_eta.push_back(eta(r.graph, r.test_field).value * dn * dn);
  }
  for (double c : scaled_eta) {
    EXPECT_NEAR(c / scaled_eta.back(), 1.0, 0.2);
    EXPECT_LT(c, 10.0);
  }
}

TEST(Ring, EveryThresholdIsOrderOneOverN) {
  for (std::size_t n : {16u, 32u, 64u}) {
    const RingInstance r = ring(n, 1);
    const Vector norms = block_norms(r.test_field);
    for (Eigen::Index v = 0; v < norms.size(); ++v) {
      if (norms[v] == 0.0) continue;
      const VertexField t = threshold(r.test_field, norms[v] * norms[v]);
      EXPECT_GE(eta(r.graph, t).value, 1.0 / (2.0 * static_cast<double>(n)) - 1e-12);
    }
  }
}

TEST(Ring, Preconditions) {
  EXPECT_THROW(ring(2, 1), std::invalid_argument);
  EXPECT_THROW(rainbow(3, 1), std::invalid_argument);
  EXPECT_THROW(two_cliques_o2(2), std::invalid_argument);
}

TEST(Rainbow, EightVerticesChords) {
  const RingInstance r = rainbow(8, 2);
  // Ring edges plus chords (1,7), (2,6), (3,5) in 1-based labels.
  EXPECT_EQ(r.graph.edges().size(), 11u);
  EXPECT_EQ(count_negative_identity(r.graph), 4);
  EXPECT_TRUE(validate(r.graph).empty());
}

TEST(Rainbow, OddSizeSkipsChordOnRingEdge) {
  const RingInstance r = rainbow(7, 1);
  // Chords (1,6), (2,5); (3,4) would duplicate a ring edge.
  EXPECT_EQ(r.graph.edges().size(), 9u);
  EXPECT_TRUE(validate(r.graph).empty());
}

TEST(Rainbow, TestFieldStillInverseSquare) {
  std::vector<double> scaled_eta;
  for (std::size_t n : {16u, 32u, 64u, 128u}) {
    const RingInstance r = rainbow(n, 2);
    const double dn = static_cast<double>(n);
    scaled_eta.push_back(eta(r.graph, r.test_field).value * dn * dn);
  }
  for (double c : scaled_eta) EXPECT_NEAR(c / scaled_eta.back(), 1.0, 0.2);
}

TEST(Rainbow, SweepCandidatesAreOrderOneOverN) {
  double smallest_scaled = std::numeric_limits<double>::infinity();
  for (std::size_t n : {16u, 32u, 64u}) {
    const RingInstance r = rainbow(n, 1);
    const SpectralResult s = bottom_spectrum(r.graph, SpectrumKind::connection, 1);
    for (const SweepCandidate& c : sweep_candidates(r.graph, s.x_vectors[0]))
      smallest_scaled = std::min(smallest_scaled, c.eta * static_cast<double>(n));
    for (const SweepCandidate& c : sweep_candidates(r.graph, r.test_field))
      smallest_scaled = std::min(smallest_scaled, c.eta * static_cast<double>(n));
  }
  EXPECT_GT(smallest_scaled, 0.1);
}

TEST(TwoCliques, NullSpaceWithoutConnectivity) {
  const ConnectionGraph g = two_cliques_o2(4);
  EXPECT_TRUE(validate(g).empty());
  EXPECT_EQ(g.edges().size(), 12u);
  EXPECT_LE(bottom_spectrum(g, SpectrumKind::connection, 2).lambdas[1], 1e-10);
  EXPECT_LE(spectral_gap(g), 1e-10);
  EXPECT_GT(grid_search_d2(two_cliques_o2(3), ConstantKind::nu_g, 32).value, 0.0);
}

TEST(Planted, ConsistentInstance) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const PlantedInstance inst = consistent_random(12, d, 0.4, 9 + d);
    EXPECT_TRUE(validate(inst.graph).empty());
    EXPECT_TRUE(is_connected(inst.graph));
    EXPECT_TRUE(inst.corrupted_edges.empty());
    const Vector lambdas = bottom_spectrum(inst.graph, SpectrumKind::connection, static_cast<Eigen::Index>(d)).lambdas;
    EXPECT_LE(lambdas.maxCoeff(), 1e-10);
    EXPECT_LE(sync_orthogonal(inst.graph).achieved, 1e-9);
  }
  EXPECT_NEAR(brute_force_d1(consistent_random(9, 1, 0.5, 3).graph, ConstantKind::eta_g).value, 0.0, 1e-12);
}

TEST(Planted, DeterministicAndEpsZeroMatchesConsistent) {
  const PlantedInstance a = outlier_noise(10, 2, 0.5, 0.2, 77);
  const PlantedInstance b = outlier_noise(10, 2, 0.5, 0.2, 77);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.corrupted_edges, b.corrupted_edges);
  EXPECT_EQ(outlier_noise(10, 2, 0.5, 0.0, 5).graph, consistent_random(10, 2, 0.5, 5).graph);
}

TEST(Planted, OutlierFractionAndValidity) {
  const PlantedInstance inst = outlier_noise(20, 3, 0.5, 0.25, 4);
  EXPECT_TRUE(validate(inst.graph).empty());
  const double expected = std::round(0.25 * static_cast<double>(inst.graph.edges().size()));
  EXPECT_EQ(static_cast<double>(inst.corrupted_edges.size()), expected);
  // Uncorrupted edges agree with the ground truth.
  std::vector<char> bad(inst.graph.edges().size(), 0);
  for (std::size_t e : inst.corrupted_edges) bad[e] = 1;
  for (std::size_t e = 0; e < inst.graph.edges().size(); ++e) {
    if (bad[e]) continue;
    const Edge& edge = inst.graph.edges()[e];
    const Matrix expected_rho = inst.ground_truth.at(edge.i) * inst.ground_truth.at(edge.j).transpose();
    EXPECT_LE((edge.rho - expected_rho).norm(), 1e-12);
  }
}

TEST(Planted, Preconditions) {
  EXPECT_THROW(outlier_noise(5, 1, 0.0, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(outlier_noise(5, 1, 0.5, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(outlier_noise(1, 1, 0.5, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(outlier_noise(30, 1, 0.001, 0.0, 1), Error);
}

TEST(Generate, FamiliesAndNames) {
  EXPECT_EQ(parse_family("rainbow"), Family::rainbow);
  EXPECT_EQ(parse_family("outliers"), Family::outliers);
  EXPECT_THROW(parse_family("tree"), std::invalid_argument);
  InstanceSpec spec;
  spec.family = Family::ring;
  spec.n = 6;
  spec.dim = 2;
  const GeneratedInstance r = generate(spec);
  EXPECT_TRUE(r.test_field.has_value());
  EXPECT_FALSE(r.ground_truth.has_value());
  spec.family = Family::outliers;
  spec.eps = 0.1;
  const GeneratedInstance o = generate(spec);
  EXPECT_TRUE(o.ground_truth.has_value());
  spec.family = Family::two_cliques_o2;
  spec.m = 4;
  EXPECT_EQ(generate(spec).graph.vertex_count(), 8u);
}

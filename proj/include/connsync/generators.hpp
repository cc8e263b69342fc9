#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "connsync/fields.hpp"
#include "connsync/graph.hpp"

namespace connsync {

struct RingInstance {
  ConnectionGraph graph;
  VertexField test_field;  // x_k = (2k/n - 1) e_1 for labels k = 1..n
};

/// Cycle 1-2-...-n-1 with identity transforms except -I on the closing edge (n, 1).
RingInstance ring(std::size_t n, std::size_t dim);

/// ring() plus chords (k, n-k) for 1 <= k < n/2 carrying -I. A chord that
/// would duplicate a ring edge (odd n, middle chord) is left out.
RingInstance rainbow(std::size_t n, std::size_t dim);

/// Two disjoint copies of K_m, every edge carrying diag(-1, 1).
ConnectionGraph two_cliques_o2(std::size_t m);

struct PlantedInstance {
  ConnectionGraph graph;
  GroupPotential ground_truth;
  std::vector<std::size_t> corrupted_edges;  // indices into graph.edges()
};

inline constexpr int kConnectivityRetries = 100;

/// G(n, p) resampled until connected, Haar potential g, rho_ij = g_i g_j^T.
PlantedInstance consistent_random(std::size_t n, std::size_t dim, double p, std::uint64_t seed);

/// consistent_random() with round(eps * |E|) uniformly chosen edges
/// replaced by independent Haar transforms. eps = 0 reproduces
/// consistent_random() for the same seed.
PlantedInstance outlier_noise(std::size_t n, std::size_t dim, double p, double eps,
                              std::uint64_t seed);

enum class Family { ring, rainbow, two_cliques_o2, consistent, outliers };

Family parse_family(std::string_view name);

struct InstanceSpec {
  Family family = Family::ring;
  std::size_t n = 0;
  std::size_t dim = 1;
  double p = 0.5;
  double eps = 0.0;
  std::size_t m = 3;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  ConnectionGraph graph;
  std::optional<VertexField> test_field;
  std::optional<GroupPotential> ground_truth;
};

GeneratedInstance generate(const InstanceSpec& spec);

}  // namespace connsync

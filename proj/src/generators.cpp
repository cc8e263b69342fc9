#include "connsync/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "connsync/error.hpp"
#include "connsync/linalg.hpp"

namespace connsync {

namespace {

Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

std::vector<Edge> ring_edges(std::size_t n, std::size_t dim) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k + 1 < n; ++k) edges.push_back(Edge{k, k + 1, 1.0, identity(dim)});
  edges.push_back(Edge{0, n - 1, 1.0, -identity(dim)});
  return edges;
}

VertexField ring_test_field(std::size_t n, std::size_t dim) {
  VertexField zero(n, dim);
  Vector data = zero.data();
  for (std::size_t k = 1; k <= n; ++k) {
    data[static_cast<Eigen::Index>((k - 1) * dim)] = 2.0 * static_cast<double>(k) / static_cast<double>(n) - 1.0;
  }
  return VertexField(n, dim, std::move(data));
}

}  // namespace

RingInstance ring(std::size_t n, std::size_t dim) {
  if (n < 3) throw std::invalid_argument("ring: needs n >= 3");
  return RingInstance{ConnectionGraph(n, dim, ring_edges(n, dim)), ring_test_field(n, dim)};
}

RingInstance rainbow(std::size_t n, std::size_t dim) {
  if (n < 4) throw std::invalid_argument("rainbow: needs n >= 4");
  std::vector<Edge> edges = ring_edges(n, dim);
  // Chords join labels k and n - k, i.e. 0-based vertices k - 1 and n - k - 1.
  for (std::size_t k = 1; 2 * k < n; ++k) {
    const std::size_t a = k - 1;
    const std::size_t b = n - k - 1;
    if (b - a == 1) continue;  // already a ring edge
    edges.push_back(Edge{a, b, 1.0, -identity(dim)});
  }
  return RingInstance{ConnectionGraph(n, dim, std::move(edges)), ring_test_field(n, dim)};
}

ConnectionGraph two_cliques_o2(std::size_t m) {
  if (m < 3) throw std::invalid_argument("two_cliques_o2: needs m >= 3");
  Matrix reflection = identity(2);
  reflection(0, 0) = -1.0;
  std::vector<Edge> edges;
  for (std::size_t offset : {std::size_t{0}, m})
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) edges.push_back(Edge{offset + a, offset + b, 1.0, reflection});
  return ConnectionGraph(2 * m, 2, std::move(edges));
}

PlantedInstance outlier_noise(std::size_t n, std::size_t dim, double p, double eps, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("outlier_noise: needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("outlier_noise: p must lie in (0, 1]");
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("outlier_noise: eps must lie in [0, 1)");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool connected = false;
  for (int attempt = 0; attempt < kConnectivityRetries && !connected; ++attempt) {
    pairs.clear();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (coin(rng)) pairs.emplace_back(a, b);
    std::vector<Edge> bare;
    for (auto [a, b] : pairs) bare.push_back(Edge{a, b, 1.0, identity(dim)});
    connected = is_connected(ConnectionGraph(n, dim, std::move(bare)));
  }
  if (!connected) {
    throw Error("outlier_noise: no connected G(" + std::to_string(n) + ", " + std::to_string(p) + ") sample in " +
                std::to_string(kConnectivityRetries) + " attempts");
  }

  std::vector<Matrix> truth;
  for (std::size_t v = 0; v < n; ++v) truth.push_back(haar_orthogonal(static_cast<Eigen::Index>(dim), rng));

  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back(Edge{a, b, 1.0, truth[a] * truth[b].transpose()});

  std::vector<std::size_t> corrupted;
  const auto outliers = static_cast<std::size_t>(std::llround(eps * static_cast<double>(edges.size())));
  if (outliers > 0) {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    corrupted.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(outliers));
    std::sort(corrupted.begin(), corrupted.end());
    for (std::size_t e : corrupted) edges[e].rho = haar_orthogonal(static_cast<Eigen::Index>(dim), rng);
  }
  return PlantedInstance{ConnectionGraph(n, dim, std::move(edges)), GroupPotential(dim, std::move(truth)),
                         std::move(corrupted)};
}

PlantedInstance consistent_random(std::size_t n, std::size_t dim, double p, std::uint64_t seed) {
  return outlier_noise(n, dim, p, 0.0, seed);
}

Family parse_family(std::string_view name) {
  if (name == "ring") return Family::ring;
  if (name == "rainbow") return Family::rainbow;
  if (name == "two_cliques_o2") return Family::two_cliques_o2;
  if (name == "consistent") return Family::consistent;
  if (name == "outliers") return Family::outliers;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

GeneratedInstance generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::ring: {
      RingInstance r = ring(spec.n, spec.dim);
      return GeneratedInstance{std::move(r.graph), std::move(r.test_field), std::nullopt};
    }
    case Family::rainbow: {
      RingInstance r = rainbow(spec.n, spec.dim);
      return GeneratedInstance{std::move(r.graph), std::move(r.test_field), std::nullopt};
    }
    case Family::two_cliques_o2:
      return GeneratedInstance{two_cliques_o2(spec.m), std::nullopt, std::nullopt};
    case Family::consistent: {
      PlantedInstance p = consistent_random(spec.n, spec.dim, spec.p, spec.seed);
      return GeneratedInstance{std::move(p.graph), std::nullopt, std::move(p.ground_truth)};
    }
    case Family::outliers: {
      PlantedInstance p = outlier_noise(spec.n, spec.dim, spec.p, spec.eps, spec.seed);
      return GeneratedInstance{std::move(p.graph), std::nullopt, std::move(p.ground_truth)};
    }
  }
  throw Error("generate: unknown family");
}

}  // namespace connsync

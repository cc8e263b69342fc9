#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "connsync/types.hpp"

namespace connsync {

/// Frobenius tolerance on rho * rho^T - I for edge transforms.
inline constexpr double kOrthogonalityTolerance = 1e-10;

/// One undirected edge, stored once with its transform oriented i -> j.
/// The transform for j -> i is rho^T.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;
  Matrix rho;
};

/// Weighted undirected graph whose edges carry orthogonal d x d transforms.
///
/// The constructor only checks what the representation itself needs
/// (index range and transform shape) and orients every edge so that i < j,
/// transposing rho when it flips an edge. Everything else, such as
/// orthogonality, positive weights and positive degrees, is reported by
/// validate() so that a parsed file can be inspected before it is rejected.
class ConnectionGraph {
 public:
  ConnectionGraph(std::size_t vertex_count, std::size_t dim, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Indices into edges() of the edges touching vertex v.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

  friend bool operator==(const ConnectionGraph& a, const ConnectionGraph& b);

 private:
  std::size_t vertex_count_;
  std::size_t dim_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Human-readable description of every broken invariant; empty when valid.
std::vector<std::string> validate(const ConnectionGraph& g);

/// Throws ValidationError when validate() is non-empty.
void require_valid(const ConnectionGraph& g);

struct DegreeSummary {
  Vector degrees;
  double volume = 0.0;
};

/// Weighted degrees and volume. Requires a valid graph.
DegreeSummary degrees(const ConnectionGraph& g);

/// Weighted degrees without validation (zero for isolated vertices).
Vector raw_degrees(const ConnectionGraph& g);

/// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<std::size_t>> connected_components(const ConnectionGraph& g);
bool is_connected(const ConnectionGraph& g);

// Text format: header `n d`, then per edge `i j w` and d*d row-major entries
// of rho. Vertices are 1-based in text. `#` starts a comment.
ConnectionGraph read_graph(std::string_view text);
std::string write_graph(const ConnectionGraph& g);

ConnectionGraph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const ConnectionGraph& g, const std::filesystem::path& path);

}  // namespace connsync

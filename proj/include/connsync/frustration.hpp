#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "connsync/fields.hpp"
#include "connsync/graph.hpp"

namespace connsync {

/// Rayleigh-type frustration, kept as its two parts.
struct FrustrationValue {
  double numerator = 0.0;    // v^T L1 v
  double denominator = 0.0;  // v^T D1 v
  double value = 0.0;
};

/// eta(v) = v^T L1 v / v^T D1 v. Throws ZeroFieldError for v == 0.
FrustrationValue eta(const ConnectionGraph& g, const VertexField& v);

/// Unsquared frustration sum_{i,j} w ||v_i - rho v_j|| / sum_i deg_i ||v_i||
/// (ordered pairs, so each edge counts twice).
double eta_l1(const ConnectionGraph& g, const VertexField& v);

/// Potential frustration 1/(2d vol) sum_{i,j} w ||g_i - rho g_j||_F^2.
double nu(const ConnectionGraph& g, const GroupPotential& p);

/// 1/(sqrt(d) vol) sum_{i,j} w ||g_i - rho g_j||_F.
double nu_l1(const ConnectionGraph& g, const GroupPotential& p);

/// max over edges of ||g_i - rho g_j||_F.
double max_edge_discrepancy(const ConnectionGraph& g, const GroupPotential& p);

struct BalanceDiagnostics {
  double alpha = 0.0;        // D0-weighted mean of the block norms
  double residual_sq = 0.0;  // ||x - alpha * normalize_nonzero(x)||_{D1}^2
  Vector norm_field;         // ||x_v|| per vertex
};

BalanceDiagnostics balance(const ConnectionGraph& g, const VertexField& x);

struct IllBalancedSet {
  std::vector<std::size_t> vertices;  // ascending
  double volume = 0.0;
};

/// Tolerance on the cosine |<x,y>_D1| / (||x||_D1 ||y||_D1) accepted as
/// D1-orthogonal by the pair diagnostics.
inline constexpr double kD1OrthogonalityTolerance = 1e-6;

/// x scaled so that ||x||_{D1}^2 = vol(G). Throws ZeroFieldError for x == 0.
VertexField rescale_to_volume(const ConnectionGraph& g, const VertexField& x);

/// {v : | ||x_v|| - 1 | >= delta } after rescale_to_volume().
IllBalancedSet ill_balanced_norm(const ConnectionGraph& g, const VertexField& x, double delta);

/// {v : |<x_v, y_v>| >= delta } after rescaling both fields. Throws
/// DimensionError when x and y are not D1-orthogonal.
IllBalancedSet ill_balanced_pair(const ConnectionGraph& g, const VertexField& x,
                                 const VertexField& y, double delta);

/// Vertices outside every IB_{x^k}(1/(8d)) and every IB_{x^k x^m}(1/(2d)),
/// for d pairwise D1-orthogonal fields. On this set the polar factor is
/// Lipschitz with constant sqrt(2).
std::vector<std::size_t> balanced_vertices(const ConnectionGraph& g,
                                           std::span<const VertexField> fields);

/// Volume of a vertex subset.
double subset_volume(const ConnectionGraph& g, std::span<const std::size_t> vertices);

}  // namespace connsync

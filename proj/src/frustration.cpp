#include "connsync/frustration.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "connsync/error.hpp"
#include "connsync/laplacian.hpp"

namespace connsync {

namespace {

void check_field(const ConnectionGraph& g, const VertexField& v, const char* who) {
  if (v.vertex_count() != g.vertex_count() || v.dim() != g.dim()) {
    throw DimensionError(std::string(who) + ": field shape does not match the graph");
  }
}

void check_potential(const ConnectionGraph& g, const GroupPotential& p, const char* who) {
  if (p.vertex_count() != g.vertex_count() || p.dim() != g.dim()) {
    throw DimensionError(std::string(who) + ": potential shape does not match the graph");
  }
}

}  // namespace

FrustrationValue eta(const ConnectionGraph& g, const VertexField& v) {
  check_field(g, v, "eta");
  const Vector deg = raw_degrees(g);
  FrustrationValue out;
  out.numerator = quadratic_form_l1(g, v);
  out.denominator = d1_norm_sq(v, deg);
  if (!(out.denominator > 0.0)) throw ZeroFieldError("eta: field is identically zero");
  out.value = out.numerator / out.denominator;
  return out;
}

double eta_l1(const ConnectionGraph& g, const VertexField& v) {
  check_field(g, v, "eta_l1");
  double num = 0.0;
  for (const Edge& e : g.edges()) num += e.weight * (v.block(e.i) - e.rho * v.block(e.j)).norm();
  const Vector deg = raw_degrees(g);
  double den = 0.0;
  for (std::size_t i = 0; i < v.vertex_count(); ++i) den += deg[static_cast<Eigen::Index>(i)] * v.block(i).norm();
  if (!(den > 0.0)) throw ZeroFieldError("eta_l1: field is identically zero");
  return 2.0 * num / den;
}

double nu(const ConnectionGraph& g, const GroupPotential& p) {
  check_potential(g, p, "nu");
  double acc = 0.0;
  for (const Edge& e : g.edges()) acc += e.weight * (p.at(e.i) - e.rho * p.at(e.j)).squaredNorm();
  const double volume = raw_degrees(g).sum();
  return acc / (static_cast<double>(g.dim()) * volume);
}

double nu_l1(const ConnectionGraph& g, const GroupPotential& p) {
  check_potential(g, p, "nu_l1");
  double acc = 0.0;
  for (const Edge& e : g.edges()) acc += e.weight * (p.at(e.i) - e.rho * p.at(e.j)).norm();
  const double volume = raw_degrees(g).sum();
  return 2.0 * acc / (std::sqrt(static_cast<double>(g.dim())) * volume);
}

double max_edge_discrepancy(const ConnectionGraph& g, const GroupPotential& p) {
  check_potential(g, p, "max_edge_discrepancy");
  double worst = 0.0;
  for (const Edge& e : g.edges()) worst = std::max(worst, (p.at(e.i) - e.rho * p.at(e.j)).norm());
  return worst;
}

BalanceDiagnostics balance(const ConnectionGraph& g, const VertexField& x) {
  check_field(g, x, "balance");
  if (x.is_zero()) throw ZeroFieldError("balance: field is identically zero");
  const Vector deg = raw_degrees(g);
  BalanceDiagnostics out;
  out.norm_field = block_norms(x);
  out.alpha = deg.dot(out.norm_field) / deg.sum();
  const VertexField unit = normalize_nonzero(x);
  const VertexField residual(x.vertex_count(), x.dim(), x.data() - out.alpha * unit.data());
  out.residual_sq = d1_norm_sq(residual, deg);
  return out;
}

VertexField rescale_to_volume(const ConnectionGraph& g, const VertexField& x) {
  check_field(g, x, "rescale_to_volume");
  const Vector deg = raw_degrees(g);
  const double norm_sq = d1_norm_sq(x, deg);
  if (!(norm_sq > 0.0)) throw ZeroFieldError("rescale_to_volume: field is identically zero");
  return scaled(x, std::sqrt(deg.sum() / norm_sq));
}

double subset_volume(const ConnectionGraph& g, std::span<const std::size_t> vertices) {
  const Vector deg = raw_degrees(g);
  double acc = 0.0;
  for (std::size_t v : vertices) acc += deg[static_cast<Eigen::Index>(v)];
  return acc;
}

IllBalancedSet ill_balanced_norm(const ConnectionGraph& g, const VertexField& x, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("ill_balanced_norm: delta must be positive");
  const VertexField unit_volume = rescale_to_volume(g, x);
  IllBalancedSet out;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    if (std::abs(unit_volume.block(v).norm() - 1.0) >= delta) out.vertices.push_back(v);
  }
  out.volume = subset_volume(g, out.vertices);
  return out;
}

IllBalancedSet ill_balanced_pair(const ConnectionGraph& g, const VertexField& x, const VertexField& y,
                                 double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("ill_balanced_pair: delta must be positive");
  const VertexField xs = rescale_to_volume(g, x);
  const VertexField ys = rescale_to_volume(g, y);
  const Vector deg = raw_degrees(g);
  const double cosine = std::abs(d1_inner(xs, ys, deg)) / deg.sum();
  if (!(cosine <= kD1OrthogonalityTolerance)) {
    throw DimensionError("ill_balanced_pair: fields are not D1-orthogonal (cosine " + std::to_string(cosine) + ")");
  }
  IllBalancedSet out;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    if (std::abs(xs.block(v).dot(ys.block(v))) >= delta) out.vertices.push_back(v);
  }
  out.volume = subset_volume(g, out.vertices);
  return out;
}

std::vector<std::size_t> balanced_vertices(const ConnectionGraph& g, std::span<const VertexField> fields) {
  const std::size_t d = g.dim();
  if (fields.size() != d) throw DimensionError("balanced_vertices: need one field per dimension");
  const double dd = static_cast<double>(d);
  std::set<std::size_t> excluded;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t v : ill_balanced_norm(g, fields[k], 1.0 / (8.0 * dd)).vertices) excluded.insert(v);
    for (std::size_t m = k + 1; m < d; ++m) {
      for (std::size_t v : ill_balanced_pair(g, fields[k], fields[m], 1.0 / (2.0 * dd)).vertices) excluded.insert(v);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!excluded.contains(v)) out.push_back(v);
  }
  return out;
}

}  // namespace connsync

#include "connsync/laplacian.hpp"

#include <cmath>
#include <string>

#include "connsync/error.hpp"
#include "connsync/linalg.hpp"

namespace connsync {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

Matrix graph_laplacian(const ConnectionGraph& g) {
  require_valid(g);
  const auto n = idx(g.vertex_count());
  Matrix l = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(idx(e.i), idx(e.j)) -= e.weight;
    l(idx(e.j), idx(e.i)) -= e.weight;
    l(idx(e.i), idx(e.i)) += e.weight;
    l(idx(e.j), idx(e.j)) += e.weight;
  }
  return l;
}

Matrix connection_laplacian(const ConnectionGraph& g) {
  require_valid(g);
  const auto d = idx(g.dim());
  const auto nd = idx(g.vertex_count()) * d;
  Matrix l = Matrix::Zero(nd, nd);
  const Vector deg = raw_degrees(g);
  for (Eigen::Index v = 0; v < deg.size(); ++v) l.block(v * d, v * d, d, d).diagonal().setConstant(deg[v]);
  for (const Edge& e : g.edges()) {
    l.block(idx(e.i) * d, idx(e.j) * d, d, d) = -e.weight * e.rho;
    l.block(idx(e.j) * d, idx(e.i) * d, d, d) = -e.weight * e.rho.transpose();
  }
  return l;
}

Matrix normalized_graph_laplacian(const ConnectionGraph& g) {
  require_valid(g);
  const auto n = idx(g.vertex_count());
  const Vector inv_sqrt = raw_degrees(g).cwiseSqrt().cwiseInverse();
  Matrix l = Matrix::Identity(n, n);
  for (const Edge& e : g.edges()) {
    const double off = -e.weight * inv_sqrt[idx(e.i)] * inv_sqrt[idx(e.j)];
    l(idx(e.i), idx(e.j)) = off;
    l(idx(e.j), idx(e.i)) = off;
  }
  return l;
}

Matrix normalized_connection_laplacian(const ConnectionGraph& g) {
  require_valid(g);
  const auto d = idx(g.dim());
  const auto nd = idx(g.vertex_count()) * d;
  const Vector inv_sqrt = raw_degrees(g).cwiseSqrt().cwiseInverse();
  Matrix l = Matrix::Identity(nd, nd);
  for (const Edge& e : g.edges()) {
    const Matrix block = (-e.weight * inv_sqrt[idx(e.i)] * inv_sqrt[idx(e.j)]) * e.rho;
    l.block(idx(e.i) * d, idx(e.j) * d, d, d) = block;
    l.block(idx(e.j) * d, idx(e.i) * d, d, d) = block.transpose();
  }
  return l;
}

LaplacianPair build_laplacians(const ConnectionGraph& g) {
  return LaplacianPair{normalized_graph_laplacian(g), normalized_connection_laplacian(g), raw_degrees(g)};
}

double quadratic_form_l1(const ConnectionGraph& g, const VertexField& v) {
  if (v.vertex_count() != g.vertex_count() || v.dim() != g.dim()) {
    throw DimensionError("quadratic_form_l1: field shape does not match the graph");
  }
  double acc = 0.0;
  for (const Edge& e : g.edges()) acc += e.weight * (v.block(e.i) - e.rho * v.block(e.j)).squaredNorm();
  return acc;
}

double quadratic_form_l0(const ConnectionGraph& g, const Vector& f) {
  if (f.size() != idx(g.vertex_count())) throw DimensionError("quadratic_form_l0: vector length does not match");
  double acc = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = f[idx(e.i)] - f[idx(e.j)];
    acc += e.weight * diff * diff;
  }
  return acc;
}

Vector whiten(const VertexField& x, const Vector& degrees) {
  const auto d = idx(x.dim());
  Vector z = x.data();
  for (Eigen::Index v = 0; v < degrees.size(); ++v) z.segment(v * d, d) *= std::sqrt(degrees[v]);
  return z;
}

VertexField unwhiten(const Vector& z, const Vector& degrees, std::size_t dim) {
  const auto d = idx(dim);
  if (z.size() != degrees.size() * d) throw DimensionError("unwhiten: vector length does not match");
  Vector x = z;
  for (Eigen::Index v = 0; v < degrees.size(); ++v) x.segment(v * d, d) /= std::sqrt(degrees[v]);
  return VertexField(static_cast<std::size_t>(degrees.size()), dim, std::move(x));
}

SpectralResult bottom_spectrum(const ConnectionGraph& g, SpectrumKind which, Eigen::Index k) {
  const Matrix l = which == SpectrumKind::connection ? normalized_connection_laplacian(g)
                                                     : normalized_graph_laplacian(g);
  SymmetricEigenResult eig = sym_eig(l, k);
  SpectralResult out;
  out.lambdas = std::move(eig.values);
  out.z_vectors = std::move(eig.vectors);
  if (which == SpectrumKind::connection) {
    const Vector deg = raw_degrees(g);
    out.x_vectors.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index c = 0; c < k; ++c) out.x_vectors.push_back(unwhiten(out.z_vectors.col(c), deg, g.dim()));
  }
  return out;
}

double spectral_gap(const ConnectionGraph& g) {
  if (g.vertex_count() < 2) throw DimensionError("spectral_gap: needs at least two vertices");
  return bottom_spectrum(g, SpectrumKind::plain, 2).lambdas[1];
}

}  // namespace connsync

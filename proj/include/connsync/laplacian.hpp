#pragma once

#include <vector>

#include "connsync/fields.hpp"
#include "connsync/graph.hpp"
#include "connsync/types.hpp"

namespace connsync {

/// lambda_2 of the normalized graph Laplacian at or below this marks a
/// disconnected graph; bounds that divide by it are reported as vacuous.
inline constexpr double kDisconnectedGap = 1e-10;

struct LaplacianPair {
  Matrix l0_normalized;  // n x n
  Matrix l1_normalized;  // nd x nd
  Vector degrees;        // D1 is deg_v * I_d per block and is never materialized
};

LaplacianPair build_laplacians(const ConnectionGraph& g);

Matrix normalized_graph_laplacian(const ConnectionGraph& g);
Matrix normalized_connection_laplacian(const ConnectionGraph& g);

// Unnormalized L0 = D0 - W0 and L1 = D1 - W1, mostly for cross-checks.
Matrix graph_laplacian(const ConnectionGraph& g);
Matrix connection_laplacian(const ConnectionGraph& g);

/// v^T L1 v = sum over edges of w ||v_i - rho v_j||^2, by edge summation.
double quadratic_form_l1(const ConnectionGraph& g, const VertexField& v);
/// f^T L0 f = sum over edges of w (f_i - f_j)^2.
double quadratic_form_l0(const ConnectionGraph& g, const Vector& f);

/// z = D1^{1/2} x and its inverse.
Vector whiten(const VertexField& x, const Vector& degrees);
VertexField unwhiten(const Vector& z, const Vector& degrees, std::size_t dim);

enum class SpectrumKind { connection, plain };

struct SpectralResult {
  Vector lambdas;
  Matrix z_vectors;
  std::vector<VertexField> x_vectors;  // D1^{-1/2} z, connection spectra only
};

/// The k smallest eigenpairs of the normalized connection (or plain) Laplacian.
SpectralResult bottom_spectrum(const ConnectionGraph& g, SpectrumKind which, Eigen::Index k);

/// lambda_2 of the normalized graph Laplacian.
double spectral_gap(const ConnectionGraph& g);

}  // namespace connsync

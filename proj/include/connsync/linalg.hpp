#pragma once

#include <cstdint>
#include <random>

#include "connsync/types.hpp"

namespace connsync {

/// Below this smallest singular value the polar factor falls back to I_d.
inline constexpr double kPolarSingularThreshold = 1e-12;

/// Largest matrix accepted by svd_small().
inline constexpr Eigen::Index kSmallSvdMaxDim = 16;

struct SymmetricEigenResult {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

/// The k smallest eigenpairs of a symmetric matrix.
///
/// Each eigenvector is signed so that its largest-magnitude entry is
/// positive (lowest index wins a tie). Within a cluster of (near-)equal
/// eigenvalues any orthonormal basis of the eigenspace may come back.
/// Throws DimensionError for non-square input or k outside [1, m], and
/// ConvergenceError when the solver fails or a pair misses the residual
/// bound 1e-8 * (1 + ||A||_F).
SymmetricEigenResult sym_eig(const Matrix& a, Eigen::Index k);

struct SvdSmall {
  Matrix u;
  Vector sigma;  // descending
  Matrix v;

  double sigma_min() const { return sigma.size() == 0 ? 0.0 : sigma[sigma.size() - 1]; }
};

/// Full SVD of a square matrix of dimension at most kSmallSvdMaxDim.
SvdSmall svd_small(const Matrix& x);

/// Nearest orthogonal matrix in Frobenius norm (the orthogonal polar factor
/// U * V^T), or the identity when x is numerically singular.
Matrix polar(const Matrix& x);

/// Haar-distributed element of O(d): QR of a Gaussian matrix, with the
/// columns of Q sign-corrected by the diagonal of R.
Matrix haar_orthogonal(Eigen::Index dim, std::uint64_t seed);
Matrix haar_orthogonal(Eigen::Index dim, std::mt19937_64& rng);

/// ||Q Q^T - I||_F
double orthogonality_defect(const Matrix& q);

}  // namespace connsync

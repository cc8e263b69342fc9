#include "connsync/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "connsync/error.hpp"

namespace connsync {

namespace {

void fix_sign(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  for (Eigen::Index r = 1; r < v.size(); ++r) {
    if (std::abs(v[r]) > std::abs(v[best])) best = r;
  }
  if (v[best] < 0.0) v = -v;
}

}  // namespace

SymmetricEigenResult sym_eig(const Matrix& a, Eigen::Index k) {
  if (a.rows() != a.cols()) throw DimensionError("sym_eig: matrix is not square");
  const Eigen::Index m = a.rows();
  if (k < 1 || k > m) {
    throw DimensionError("sym_eig: requested " + std::to_string(k) + " pairs of a " + std::to_string(m) +
                         "x" + std::to_string(m) + " matrix");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DimensionError("sym_eig: matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("sym_eig: eigensolver did not converge", std::numeric_limits<double>::infinity());
  }

  SymmetricEigenResult out;
  out.values = solver.eigenvalues().head(k);
  out.vectors = solver.eigenvectors().leftCols(k);
  for (Eigen::Index c = 0; c < k; ++c) fix_sign(out.vectors.col(c));

  const double bound = 1e-8 * (1.0 + a.norm());
  double worst = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) {
    worst = std::max(worst, (a * out.vectors.col(c) - out.values[c] * out.vectors.col(c)).norm());
  }
  if (!(worst <= bound)) {
    throw ConvergenceError("sym_eig: residual " + std::to_string(worst) + " exceeds " + std::to_string(bound),
                           worst);
  }
  return out;
}

SvdSmall svd_small(const Matrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("svd_small: matrix is not square");
  if (x.rows() > kSmallSvdMaxDim) {
    throw DimensionError("svd_small: dimension " + std::to_string(x.rows()) + " exceeds " +
                         std::to_string(kSmallSvdMaxDim));
  }
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdSmall{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix polar(const Matrix& x) {
  const SvdSmall s = svd_small(x);
  if (x.rows() == 0 || s.sigma_min() <= kPolarSingularThreshold) {
    return Matrix::Identity(x.rows(), x.cols());
  }
  return s.u * s.v.transpose();
}

Matrix haar_orthogonal(Eigen::Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw DimensionError("haar_orthogonal: dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix gauss(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) gauss(r, c) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

Matrix haar_orthogonal(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_orthogonal(dim, rng);
}

double orthogonality_defect(const Matrix& q) {
  return (q * q.transpose() - Matrix::Identity(q.rows(), q.rows())).norm();
}

}  // namespace connsync

#include "connsync/fields.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "connsync/error.hpp"
#include "connsync/linalg.hpp"

namespace connsync {

VertexField::VertexField(std::size_t vertex_count, std::size_t dim)
    : vertex_count_(vertex_count), dim_(dim), data_(Vector::Zero(static_cast<Eigen::Index>(vertex_count * dim))) {}

VertexField::VertexField(std::size_t vertex_count, std::size_t dim, Vector data)
    : vertex_count_(vertex_count), dim_(dim), data_(std::move(data)) {
  if (data_.size() != static_cast<Eigen::Index>(vertex_count * dim)) {
    throw DimensionError("VertexField: data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(vertex_count * dim));
  }
  if (!data_.allFinite()) throw DimensionError("VertexField: non-finite entry");
}

bool VertexField::is_zero() const { return data_.isZero(0.0); }

GroupPotential::GroupPotential(std::size_t dim, std::vector<Matrix> matrices)
    : dim_(dim), matrices_(std::move(matrices)) {
  const auto d = static_cast<Eigen::Index>(dim_);
  for (std::size_t v = 0; v < matrices_.size(); ++v) {
    const Matrix& m = matrices_[v];
    if (m.rows() != d || m.cols() != d) {
      throw DimensionError("GroupPotential: matrix " + std::to_string(v) + " is not " + std::to_string(dim_) +
                           "x" + std::to_string(dim_));
    }
    if (!(orthogonality_defect(m) <= kPotentialTolerance)) {
      throw DimensionError("GroupPotential: matrix " + std::to_string(v) + " is not orthogonal");
    }
  }
}

Vector block_norms(const VertexField& x) {
  Vector out(static_cast<Eigen::Index>(x.vertex_count()));
  for (std::size_t v = 0; v < x.vertex_count(); ++v) out[static_cast<Eigen::Index>(v)] = x.block(v).norm();
  return out;
}

VertexField threshold(const VertexField& x, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("threshold: u must be positive");
  Vector out = Vector::Zero(x.data().size());
  const auto d = static_cast<Eigen::Index>(x.dim());
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    const double norm = x.block(v).norm();
    if (norm * norm >= u) out.segment(static_cast<Eigen::Index>(v) * d, d) = x.block(v) / norm;
  }
  return VertexField(x.vertex_count(), x.dim(), std::move(out));
}

VertexField normalize_nonzero(const VertexField& x) {
  Vector out = Vector::Zero(x.data().size());
  const auto d = static_cast<Eigen::Index>(x.dim());
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    const double norm = x.block(v).norm();
    if (norm > kZeroBlockNorm) out.segment(static_cast<Eigen::Index>(v) * d, d) = x.block(v) / norm;
  }
  return VertexField(x.vertex_count(), x.dim(), std::move(out));
}

std::vector<Matrix> stack_columns(std::span<const VertexField> fields) {
  if (fields.empty()) throw DimensionError("stack_columns: no fields");
  const std::size_t n = fields.front().vertex_count();
  const std::size_t d = fields.front().dim();
  if (fields.size() != d) {
    throw DimensionError("stack_columns: need " + std::to_string(d) + " fields, got " + std::to_string(fields.size()));
  }
  for (const VertexField& f : fields) {
    if (f.vertex_count() != n || f.dim() != d) throw DimensionError("stack_columns: fields differ in shape");
  }
  const auto dd = static_cast<Eigen::Index>(d);
  std::vector<Matrix> out(n, Matrix(dd, dd));
  for (std::size_t v = 0; v < n; ++v)
    for (Eigen::Index k = 0; k < dd; ++k) out[v].col(k) = fields[static_cast<std::size_t>(k)].block(v);
  return out;
}

std::vector<VertexField> extract_columns(const GroupPotential& p) {
  const std::size_t n = p.vertex_count();
  const auto d = static_cast<Eigen::Index>(p.dim());
  std::vector<VertexField> out;
  out.reserve(p.dim());
  for (Eigen::Index k = 0; k < d; ++k) {
    Vector data(static_cast<Eigen::Index>(n) * d);
    for (std::size_t v = 0; v < n; ++v) data.segment(static_cast<Eigen::Index>(v) * d, d) = p.at(v).col(k);
    out.emplace_back(n, p.dim(), std::move(data));
  }
  return out;
}

double d1_inner(const VertexField& x, const VertexField& y, const Vector& degrees) {
  if (x.vertex_count() != y.vertex_count() || x.dim() != y.dim() ||
      degrees.size() != static_cast<Eigen::Index>(x.vertex_count())) {
    throw DimensionError("d1_inner: shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) acc += degrees[static_cast<Eigen::Index>(v)] * x.block(v).dot(y.block(v));
  return acc;
}

double d1_norm_sq(const VertexField& x, const Vector& degrees) { return d1_inner(x, x, degrees); }

VertexField scaled(const VertexField& x, double factor) {
  return VertexField(x.vertex_count(), x.dim(), x.data() * factor);
}

std::string write_field(const VertexField& x) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    const auto b = x.block(v);
    for (Eigen::Index k = 0; k < b.size(); ++k) out << (k ? " " : "") << b[k];
    out << '\n';
  }
  return out.str();
}

std::string write_potential(const GroupPotential& p) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const Matrix& m : p.matrices()) {
    bool first = true;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out << (first ? "" : " ") << m(r, c);
        first = false;
      }
    out << '\n';
  }
  return out.str();
}

}  // namespace connsync

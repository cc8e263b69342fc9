#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "connsync/types.hpp"

namespace connsync {

/// Blocks with norm at or below this are treated as zero.
inline constexpr double kZeroBlockNorm = 1e-14;

/// Membership tolerance for potentials: ||g g^T - I||_F.
inline constexpr double kPotentialTolerance = 1e-9;

/// An assignment V -> R^d stored as a stacked (n*d)-vector.
class VertexField {
 public:
  VertexField(std::size_t vertex_count, std::size_t dim);
  VertexField(std::size_t vertex_count, std::size_t dim, Vector data);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t dim() const noexcept { return dim_; }
  const Vector& data() const noexcept { return data_; }

  auto block(std::size_t v) const {
    return data_.segment(static_cast<Eigen::Index>(v * dim_), static_cast<Eigen::Index>(dim_));
  }

  bool is_zero() const;

  friend bool operator==(const VertexField& a, const VertexField& b) {
    return a.vertex_count_ == b.vertex_count_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  std::size_t vertex_count_;
  std::size_t dim_;
  Vector data_;
};

/// An assignment V -> O(d).
class GroupPotential {
 public:
  /// Throws DimensionError on shape mismatch or a matrix outside O(d).
  GroupPotential(std::size_t dim, std::vector<Matrix> matrices);

  std::size_t vertex_count() const noexcept { return matrices_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& at(std::size_t v) const { return matrices_[v]; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }

 private:
  std::size_t dim_;
  std::vector<Matrix> matrices_;
};

/// ||x_v|| for every vertex.
Vector block_norms(const VertexField& x);

/// Threshold rounding: block v becomes x_v / ||x_v|| when ||x_v||^2 >= u and
/// zero otherwise. Requires u > 0.
VertexField threshold(const VertexField& x, double u);

/// Blockwise normalization, leaving zero blocks at zero.
VertexField normalize_nonzero(const VertexField& x);

/// Per-vertex matrices X_v whose column k is block v of fields[k].
/// Needs fields.size() == dim of every field.
std::vector<Matrix> stack_columns(std::span<const VertexField> fields);

/// Column fields of a potential; stack_columns() inverts this.
std::vector<VertexField> extract_columns(const GroupPotential& p);

/// D1 inner product sum_v deg_v <x_v, y_v>.
double d1_inner(const VertexField& x, const VertexField& y, const Vector& degrees);
double d1_norm_sq(const VertexField& x, const Vector& degrees);

/// Multiply every entry by a scalar.
VertexField scaled(const VertexField& x, double factor);

/// One line per vertex, entries at 17 significant digits.
std::string write_field(const VertexField& x);
/// One line per vertex, the d*d entries row-major at 17 significant digits.
std::string write_potential(const GroupPotential& p);

}  // namespace connsync

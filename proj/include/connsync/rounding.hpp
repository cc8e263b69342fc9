#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "connsync/fields.hpp"
#include "connsync/graph.hpp"

namespace connsync {

enum class SyncMode { partial_sphere, full_sphere, orthogonal_group };

std::string_view to_string(SyncMode mode);

/// Upper bound guaranteed for an algorithm's output, with the spectral data
/// it was computed from.
struct Certificate {
  double bound = 0.0;  // +inf when vacuous
  bool vacuous = false;
  double l1_bound = 0.0;  // bound for the unsquared functional, +inf when vacuous
  Vector lambdas;         // bottom eigenvalues of the normalized connection Laplacian
  double spectral_gap = 0.0;  // lambda_2 of the normalized graph Laplacian (0 if unused)
};

struct SyncSolution {
  SyncMode mode = SyncMode::partial_sphere;
  std::variant<VertexField, GroupPotential> solution;
  double achieved = 0.0;     // eta (sphere modes) or nu (orthogonal mode)
  double achieved_l1 = 0.0;  // eta_1 / nu_1 of the same output
  // Partial mode only: the smallest eta_1 over the threshold sweep.
  std::optional<double> sweep_best_l1;
  Certificate certificate;

  const VertexField& field() const { return std::get<VertexField>(solution); }
  const GroupPotential& potential() const { return std::get<GroupPotential>(solution); }
};

struct SweepCandidate {
  double threshold = 0.0;
  VertexField field;
  double eta = 0.0;
  double eta_l1 = 0.0;
};

/// Threshold roundings of x at every distinct squared block norm, in
/// ascending threshold order. Every candidate is a nonzero field.
/// Throws ZeroFieldError when x has no nonzero block.
std::vector<SweepCandidate> sweep_candidates(const ConnectionGraph& g, const VertexField& x);

/// Minimizer of eta over the sweep; the smallest threshold wins ties.
const SweepCandidate& best_by_eta(std::span<const SweepCandidate> candidates);
const SweepCandidate& best_by_eta_l1(std::span<const SweepCandidate> candidates);

/// Blockwise normalization with zero blocks replaced by e_1.
VertexField round_to_sphere(const VertexField& x);

/// g_v = polar([x^1_v ... x^d_v]).
GroupPotential round_to_orthogonal(std::span<const VertexField> fields);

// Guarantees for the three algorithms, given the eigenvalues they used.
double partial_sphere_bound(double lambda1, std::size_t dim);
double full_sphere_bound(double lambda1, double gap);
double orthogonal_bound(double lambda_sum, double gap, std::size_t dim);
/// The sharper per-rounding constant (2/d + 2^10 d^3) / gap.
double polar_rounding_bound(double eta_sum, double gap, std::size_t dim);

double partial_sphere_l1_bound(double lambda1);
double full_sphere_l1_bound(double lambda1, double gap);
double orthogonal_l1_bound(double lambda_sum, double gap, std::size_t dim);

/// Bottom eigenvector, threshold sweep, best field by eta.
SyncSolution sync_partial_sphere(const ConnectionGraph& g);
/// Bottom eigenvector, blockwise normalization.
SyncSolution sync_full_sphere(const ConnectionGraph& g);
/// d bottom eigenvectors, per-vertex polar factor.
SyncSolution sync_orthogonal(const ConnectionGraph& g);

SyncSolution synchronize(const ConnectionGraph& g, SyncMode mode);

}  // namespace connsync

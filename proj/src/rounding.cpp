#include "connsync/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "connsync/error.hpp"
#include "connsync/frustration.hpp"
#include "connsync/laplacian.hpp"
#include "connsync/linalg.hpp"

namespace connsync {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nonneg(double lambda) { return std::max(lambda, 0.0); }

bool disconnected(double gap) { return !(gap > kDisconnectedGap); }

}  // namespace

std::string_view to_string(SyncMode mode) {
  switch (mode) {
    case SyncMode::partial_sphere: return "partial";
    case SyncMode::full_sphere: return "full";
    case SyncMode::orthogonal_group: return "od";
  }
  return "?";
}

double partial_sphere_bound(double lambda1, std::size_t dim) {
  return std::sqrt((dim == 1 ? 8.0 : 10.0) * nonneg(lambda1));
}

double full_sphere_bound(double lambda1, double gap) {
  return disconnected(gap) ? kInf : 44.0 * nonneg(lambda1) / gap;
}

double orthogonal_bound(double lambda_sum, double gap, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return disconnected(gap) ? kInf : 1026.0 * d * d * d * nonneg(lambda_sum) / gap;
}

double polar_rounding_bound(double eta_sum, double gap, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return disconnected(gap) ? kInf : (2.0 / d + 1024.0 * d * d * d) * nonneg(eta_sum) / gap;
}

double partial_sphere_l1_bound(double lambda1) { return std::sqrt(10.0 * nonneg(lambda1)); }

double full_sphere_l1_bound(double lambda1, double gap) {
  return disconnected(gap) ? kInf : 2.0 * std::sqrt(22.0 * nonneg(lambda1) / gap);
}

double orthogonal_l1_bound(double lambda_sum, double gap, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return disconnected(gap) ? kInf : 6.0 * d * std::sqrt(57.0 * d * nonneg(lambda_sum) / gap);
}

std::vector<SweepCandidate> sweep_candidates(const ConnectionGraph& g, const VertexField& x) {
  const Vector norms = block_norms(x);
  std::vector<double> cuts;
  for (Eigen::Index v = 0; v < norms.size(); ++v) {
    if (norms[v] > kZeroBlockNorm) cuts.push_back(norms[v] * norms[v]);
  }
  if (cuts.empty()) throw ZeroFieldError("sweep_candidates: field has no nonzero block");
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<SweepCandidate> out;
  out.reserve(cuts.size());
  for (double u : cuts) {
    VertexField rounded = threshold(x, u);
    const double value = eta(g, rounded).value;
    const double value_l1 = eta_l1(g, rounded);
    out.push_back(SweepCandidate{u, std::move(rounded), value, value_l1});
  }
  return out;
}

const SweepCandidate& best_by_eta(std::span<const SweepCandidate> candidates) {
  if (candidates.empty()) throw ZeroFieldError("best_by_eta: no candidates");
  const SweepCandidate* best = &candidates.front();
  for (const SweepCandidate& c : candidates) {
    if (c.eta < best->eta) best = &c;
  }
  return *best;
}

const SweepCandidate& best_by_eta_l1(std::span<const SweepCandidate> candidates) {
  if (candidates.empty()) throw ZeroFieldError("best_by_eta_l1: no candidates");
  const SweepCandidate* best = &candidates.front();
  for (const SweepCandidate& c : candidates) {
    if (c.eta_l1 < best->eta_l1) best = &c;
  }
  return *best;
}

VertexField round_to_sphere(const VertexField& x) {
  Vector out = normalize_nonzero(x).data();
  const auto d = static_cast<Eigen::Index>(x.dim());
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    auto b = out.segment(static_cast<Eigen::Index>(v) * d, d);
    if (b.isZero(0.0)) b[0] = 1.0;
  }
  return VertexField(x.vertex_count(), x.dim(), std::move(out));
}

GroupPotential round_to_orthogonal(std::span<const VertexField> fields) {
  std::vector<Matrix> stacked = stack_columns(fields);
  for (Matrix& m : stacked) m = polar(m);
  return GroupPotential(fields.front().dim(), std::move(stacked));
}

SyncSolution sync_partial_sphere(const ConnectionGraph& g) {
  const SpectralResult spectrum = bottom_spectrum(g, SpectrumKind::connection, 1);
  const std::vector<SweepCandidate> candidates = sweep_candidates(g, spectrum.x_vectors.front());
  const SweepCandidate& best = best_by_eta(candidates);

  SyncSolution out{SyncMode::partial_sphere, best.field, 0.0, 0.0, std::nullopt, {}};
  out.achieved = best.eta;
  out.achieved_l1 = best.eta_l1;
  out.sweep_best_l1 = best_by_eta_l1(candidates).eta_l1;
  const double lambda1 = spectrum.lambdas[0];
  out.certificate.lambdas = spectrum.lambdas;
  out.certificate.bound = partial_sphere_bound(lambda1, g.dim());
  out.certificate.l1_bound = partial_sphere_l1_bound(lambda1);
  return out;
}

SyncSolution sync_full_sphere(const ConnectionGraph& g) {
  const SpectralResult spectrum = bottom_spectrum(g, SpectrumKind::connection, 1);
  const double gap = spectral_gap(g);
  VertexField rounded = round_to_sphere(spectrum.x_vectors.front());

  SyncSolution out{SyncMode::full_sphere, rounded, 0.0, 0.0, std::nullopt, {}};
  out.achieved = eta(g, rounded).value;
  out.achieved_l1 = eta_l1(g, rounded);
  const double lambda1 = spectrum.lambdas[0];
  out.certificate.lambdas = spectrum.lambdas;
  out.certificate.spectral_gap = gap;
  out.certificate.vacuous = disconnected(gap);
  out.certificate.bound = full_sphere_bound(lambda1, gap);
  out.certificate.l1_bound = full_sphere_l1_bound(lambda1, gap);
  return out;
}

SyncSolution sync_orthogonal(const ConnectionGraph& g) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  const SpectralResult spectrum = bottom_spectrum(g, SpectrumKind::connection, d);
  const double gap = spectral_gap(g);
  GroupPotential rounded = round_to_orthogonal(spectrum.x_vectors);

  SyncSolution out{SyncMode::orthogonal_group, rounded, 0.0, 0.0, std::nullopt, {}};
  out.achieved = nu(g, rounded);
  out.achieved_l1 = nu_l1(g, rounded);
  const double lambda_sum = spectrum.lambdas.sum();
  out.certificate.lambdas = spectrum.lambdas;
  out.certificate.spectral_gap = gap;
  out.certificate.vacuous = disconnected(gap);
  out.certificate.bound = orthogonal_bound(lambda_sum, gap, g.dim());
  out.certificate.l1_bound = orthogonal_l1_bound(lambda_sum, gap, g.dim());
  return out;
}

SyncSolution synchronize(const ConnectionGraph& g, SyncMode mode) {
  switch (mode) {
    case SyncMode::partial_sphere: return sync_partial_sphere(g);
    case SyncMode::full_sphere: return sync_full_sphere(g);
    case SyncMode::orthogonal_group: return sync_orthogonal(g);
  }
  throw Error("synchronize: unknown mode");
}

}  // namespace connsync

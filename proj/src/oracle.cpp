#include "connsync/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "connsync/error.hpp"
#include "connsync/frustration.hpp"

namespace connsync {

std::string_view to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::eta_g: return "eta_g";
    case ConstantKind::eta_star_g: return "eta_star_g";
    case ConstantKind::nu_g: return "nu_g";
    case ConstantKind::eta_g_l1: return "eta_g_l1";
    case ConstantKind::eta_star_g_l1: return "eta_star_g_l1";
    case ConstantKind::nu_g_l1: return "nu_g_l1";
  }
  return "?";
}

ConstantKind parse_constant_kind(std::string_view name) {
  for (ConstantKind k : {ConstantKind::eta_g, ConstantKind::eta_star_g, ConstantKind::nu_g, ConstantKind::eta_g_l1,
                         ConstantKind::eta_star_g_l1, ConstantKind::nu_g_l1}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown constant kind '" + std::string(name) + "'");
}

namespace {

bool is_partial(ConstantKind k) { return k == ConstantKind::eta_star_g || k == ConstantKind::eta_star_g_l1; }
bool is_potential(ConstantKind k) { return k == ConstantKind::nu_g || k == ConstantKind::nu_g_l1; }
bool is_unsquared(ConstantKind k) {
  return k == ConstantKind::eta_g_l1 || k == ConstantKind::eta_star_g_l1 || k == ConstantKind::nu_g_l1;
}

// Reflected mixed-radix Gray code: successive states differ in one digit by +-1.
class GrayCounter {
 public:
  GrayCounter(std::size_t digits, int radix) : digit_(digits, 0), dir_(digits, 1), radix_(radix) {}

  const std::vector<int>& digits() const { return digit_; }

  // Advances one step; returns false after the last state.
  bool next(std::size_t& changed, int& previous) {
    for (std::size_t j = 0; j < digit_.size(); ++j) {
      const int moved = digit_[j] + dir_[j];
      if (moved >= 0 && moved < radix_) {
        changed = j;
        previous = digit_[j];
        digit_[j] = moved;
        return true;
      }
      dir_[j] = -dir_[j];
    }
    return false;
  }

 private:
  std::vector<int> digit_;
  std::vector<int> dir_;
  int radix_;
};

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

double evaluate(const ConnectionGraph& g, ConstantKind kind, const std::variant<VertexField, GroupPotential>& arg) {
  switch (kind) {
    case ConstantKind::eta_g:
    case ConstantKind::eta_star_g: return eta(g, std::get<VertexField>(arg)).value;
    case ConstantKind::eta_g_l1:
    case ConstantKind::eta_star_g_l1: return eta_l1(g, std::get<VertexField>(arg));
    case ConstantKind::nu_g: return nu(g, std::get<GroupPotential>(arg));
    case ConstantKind::nu_g_l1: return nu_l1(g, std::get<GroupPotential>(arg));
  }
  throw Error("unknown constant kind");
}

}  // namespace

OracleResult brute_force_d1(const ConnectionGraph& g, ConstantKind kind) {
  if (g.dim() != 1) throw DimensionError("brute_force_d1: needs d = 1");
  require_valid(g);
  const std::size_t n = g.vertex_count();
  const bool partial = is_partial(kind);
  const std::size_t cap = partial ? kMaxPartialEnumerationVertices : kMaxFullEnumerationVertices;
  if (n > cap) {
    throw DimensionError("brute_force_d1: " + std::to_string(n) + " vertices exceeds the cap of " +
                         std::to_string(cap) + " for " + std::string(to_string(kind)));
  }
  const bool unsquared = is_unsquared(kind);
  const int radix = partial ? 3 : 2;
  const Vector deg = raw_degrees(g);

  auto sign_of = [&](int digit) { return partial ? digit - 1 : 2 * digit - 1; };
  std::vector<int> sign(n, -1);
  auto edge_term = [&](const Edge& e) {
    const double diff = sign[e.i] - e.rho(0, 0) * sign[e.j];
    return e.weight * (unsquared ? std::abs(diff) : diff * diff);
  };

  std::vector<double> term(g.edges().size());
  double numerator = 0.0;
  for (std::size_t k = 0; k < g.edges().size(); ++k) numerator += term[k] = edge_term(g.edges()[k]);
  double denominator = deg.sum();
  std::size_t support = n;

  auto ratio = [&] { return (unsquared ? 2.0 : 1.0) * numerator / denominator; };
  auto lex_less = [](const std::vector<int>& a, const std::vector<int>& b) { return a < b; };

  double best = ratio();
  std::vector<int> best_sign = sign;

  GrayCounter counter(n, radix);
  std::size_t v = 0;
  int previous = 0;
  while (counter.next(v, previous)) {
    const int old_sign = sign[v];
    sign[v] = sign_of(counter.digits()[v]);
    denominator += deg[static_cast<Eigen::Index>(v)] * (std::abs(sign[v]) - std::abs(old_sign));
    support = support + (sign[v] != 0) - (old_sign != 0);
    for (std::size_t k : g.incident(v)) {
      numerator -= term[k];
      numerator += term[k] = edge_term(g.edges()[k]);
    }
    if (support == 0) continue;
    const double value = ratio();
    if (value < best && !nearly_equal(value, best)) {
      best = value;
      best_sign = sign;
    } else if (nearly_equal(value, best) && lex_less(sign, best_sign)) {
      best = std::min(best, value);
      best_sign = sign;
    }
  }

  Vector data(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) data[static_cast<Eigen::Index>(i)] = best_sign[i];
  std::variant<VertexField, GroupPotential> argmin = VertexField(n, 1, std::move(data));
  if (is_potential(kind)) {
    std::vector<Matrix> matrices;
    for (int s : best_sign) matrices.push_back(Matrix::Constant(1, 1, s));
    argmin = GroupPotential(1, std::move(matrices));
  }
  const double value = evaluate(g, kind, argmin);
  return OracleResult{kind, value, std::move(argmin), OracleMethod::exact_enumeration, std::nullopt};
}

OracleResult grid_search_d2(const ConnectionGraph& g, ConstantKind kind, int steps) {
  if (g.dim() != 2) throw DimensionError("grid_search_d2: needs d = 2");
  if (steps < 1 || steps > kMaxGridSteps) {
    throw DimensionError("grid_search_d2: steps must lie in [1, " + std::to_string(kMaxGridSteps) + "]");
  }
  require_valid(g);
  const auto components = connected_components(g);
  for (const auto& c : components) {
    if (c.size() > kMaxGridComponentVertices) {
      throw DimensionError("grid_search_d2: a connected component has " + std::to_string(c.size()) +
                           " vertices, the cap is " + std::to_string(kMaxGridComponentVertices));
    }
  }

  const bool partial = is_partial(kind);
  const bool potential = is_potential(kind);
  const bool unsquared = is_unsquared(kind);

  // Grid states. Sphere: unit vectors (plus zero, last, for partial kinds).
  // O(2): rotations R(theta_k) then reflections F(theta_k).
  std::vector<Matrix> states;
  for (int k = 0; k < steps; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / steps;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (potential) {
      Matrix r(2, 2);
      r << c, -s, s, c;
      states.push_back(r);
    } else {
      Matrix u(2, 1);
      u << c, s;
      states.push_back(u);
    }
  }
  if (potential) {
    for (int k = 0; k < steps; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / steps;
      Matrix f(2, 2);
      f << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
      states.push_back(f);
    }
  }
  if (partial) states.push_back(Matrix::Zero(2, 1));
  const std::size_t radix = states.size();
  const std::size_t zero_state = partial ? radix - 1 : radix;

  // cost[e][a * radix + b] = w * dist(state_a, rho * state_b)
  std::vector<std::vector<double>> cost(g.edges().size(), std::vector<double>(radix * radix));
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    for (std::size_t a = 0; a < radix; ++a)
      for (std::size_t b = 0; b < radix; ++b) {
        const double dist = (states[a] - edge.rho * states[b]).norm();
        cost[e][a * radix + b] = edge.weight * (unsquared ? dist : dist * dist);
      }
  }

  const Vector deg = raw_degrees(g);
  std::vector<std::size_t> choice(g.vertex_count(), 0);
  double best_partial_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_partial_choice;

  for (const auto& comp : components) {
    // O(2) fixes the first vertex of the component to the identity.
    const std::size_t fixed = potential ? 1 : 0;
    const std::size_t free_count = comp.size() - fixed;
    for (std::size_t v : comp) choice[v] = 0;

    std::vector<std::size_t> comp_edges;
    for (std::size_t v : comp)
      for (std::size_t e : g.incident(v))
        if (g.edges()[e].i == v) comp_edges.push_back(e);

    auto edge_cost = [&](std::size_t e) {
      const Edge& edge = g.edges()[e];
      return cost[e][choice[edge.i] * radix + choice[edge.j]];
    };
    std::vector<double> term(g.edges().size(), 0.0);
    double numerator = 0.0;
    for (std::size_t e : comp_edges) numerator += term[e] = edge_cost(e);
    double denominator = 0.0;
    std::size_t support = 0;
    for (std::size_t v : comp) {
      if (choice[v] != zero_state) {
        denominator += deg[static_cast<Eigen::Index>(v)];
        ++support;
      }
    }

    double best = partial ? numerator / denominator : numerator;
    std::vector<std::size_t> best_choice(comp.size());
    for (std::size_t t = 0; t < comp.size(); ++t) best_choice[t] = choice[comp[t]];

    GrayCounter counter(free_count, static_cast<int>(radix));
    std::size_t pos = 0;
    int previous = 0;
    while (counter.next(pos, previous)) {
      const std::size_t v = comp[fixed + pos];
      const std::size_t old_state = choice[v];
      choice[v] = static_cast<std::size_t>(counter.digits()[pos]);
      if (partial) {
        const double dv = deg[static_cast<Eigen::Index>(v)];
        if (old_state == zero_state && choice[v] != zero_state) {
          denominator += dv;
          ++support;
        } else if (old_state != zero_state && choice[v] == zero_state) {
          denominator -= dv;
          --support;
        }
      }
      for (std::size_t e : g.incident(v)) {
        numerator -= term[e];
        numerator += term[e] = edge_cost(e);
      }
      if (partial && support == 0) continue;
      const double value = partial ? numerator / denominator : numerator;
      if (value < best) {
        best = value;
        for (std::size_t t = 0; t < comp.size(); ++t) best_choice[t] = choice[comp[t]];
      }
    }

    if (partial) {
      if (best < best_partial_ratio) {
        best_partial_ratio = best;
        best_partial_choice.assign(g.vertex_count(), zero_state);
        for (std::size_t t = 0; t < comp.size(); ++t) best_partial_choice[comp[t]] = best_choice[t];
      }
    } else {
      for (std::size_t t = 0; t < comp.size(); ++t) choice[comp[t]] = best_choice[t];
    }
  }
  if (partial) choice = best_partial_choice;

  auto build = [&]() -> std::variant<VertexField, GroupPotential> {
    if (potential) {
      std::vector<Matrix> matrices;
      for (std::size_t s : choice) matrices.push_back(states[s]);
      return GroupPotential(2, std::move(matrices));
    }
    Vector data(static_cast<Eigen::Index>(2 * g.vertex_count()));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) data.segment(static_cast<Eigen::Index>(2 * v), 2) = states[choice[v]];
    return VertexField(g.vertex_count(), 2, std::move(data));
  };
  std::variant<VertexField, GroupPotential> argmin = build();
  const double value = evaluate(g, kind, argmin);
  return OracleResult{kind, value, std::move(argmin), OracleMethod::grid, steps};
}

}  // namespace connsync

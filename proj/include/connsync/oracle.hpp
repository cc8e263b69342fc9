#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "connsync/fields.hpp"
#include "connsync/graph.hpp"

namespace connsync {

enum class ConstantKind { eta_g, eta_star_g, nu_g, eta_g_l1, eta_star_g_l1, nu_g_l1 };

std::string_view to_string(ConstantKind kind);
/// Parses the names printed by to_string(); throws std::invalid_argument.
ConstantKind parse_constant_kind(std::string_view name);

enum class OracleMethod { exact_enumeration, grid };

struct OracleResult {
  ConstantKind kind = ConstantKind::eta_g;
  double value = 0.0;
  std::variant<VertexField, GroupPotential> argmin;
  OracleMethod method = OracleMethod::exact_enumeration;
  std::optional<int> grid_steps;
};

inline constexpr std::size_t kMaxFullEnumerationVertices = 14;
inline constexpr std::size_t kMaxPartialEnumerationVertices = 9;
inline constexpr std::size_t kMaxGridComponentVertices = 5;
inline constexpr int kMaxGridSteps = 64;

/// Exact frustration constant for d = 1 by enumerating every assignment in
/// reflected Gray-code order. The argmin is the lexicographically smallest
/// minimizer with -1 < 0 < +1.
OracleResult brute_force_d1(const ConnectionGraph& g, ConstantKind kind);

/// Grid upper bound for d = 2. Sphere values are angles 2 pi k / steps
/// (plus the zero vector for partial kinds); O(2) elements are the
/// rotations and reflections at those angles. The search runs per connected
/// component, and for O(2) fixes one vertex per component to the identity,
/// which loses nothing because the grid is a group.
OracleResult grid_search_d2(const ConnectionGraph& g, ConstantKind kind, int steps);

}  // namespace connsync

// Exact solvers for the nonnegative fixed-point systems B = M B + F that
// arise from weighted automata.
#pragma once

#include "redip/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace redip {

/// B = M B + F with a sparse nonnegative matrix M.
struct FixpointSystem {
    std::size_t size = 0;
    /// rows[q] lists (t, M[q][t]) with distinct t.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
    std::vector<Rational> rhs;
};

/// Solves (I - M) B = F block by block along the strongly connected
/// components of M. Returns nullopt if a block is singular or yields a
/// negative component; otherwise the returned vector is the least
/// nonnegative solution.
std::optional<std::vector<Rational>> least_solution_elimination(const FixpointSystem& sys);

/// Minimizes objective . B subject to B = M B + F and B >= 0 with an exact
/// two-phase simplex. Returns nullopt if the program is infeasible.
std::optional<std::vector<Rational>> least_solution_lp(const FixpointSystem& sys,
                                                       const std::vector<Rational>& objective);

/// Strongly connected components of the graph given by adjacency lists,
/// in reverse topological order (every edge leaving a component points to
/// a component listed earlier).
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adjacency);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;
    Rational value;
};

/// minimize c.x subject to A x = b, x >= 0, solved exactly with Bland's rule.
LpResult simplex_minimize(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                          const std::vector<Rational>& c);

}  // namespace redip

#pragma once

#include "momentlab/moment_vector.hpp"
#include "momentlab/rational.hpp"

#include <optional>
#include <vector>

namespace momentlab {

/// Non-negative weights on the grid {0, 1/N_g, ..., 1} matching the target
/// moments within the tolerance in every coordinate.
struct GridWitness {
    long grid_size = 0;
    std::vector<Rational> weights;
    Rational tolerance;
};

struct LpResult {
    bool feasible = false;
    std::optional<GridWitness> witness;
};

/// Independent membership oracle: decides by exact-rational phase-1 simplex
/// (Bland's rule) whether some grid measure reproduces t within the given
/// per-coordinate tolerance. Requires grid_size >= N+1 and tolerance >= 0.
LpResult lp_feasible(const std::vector<Rational>& t, long grid_size, const Rational& tolerance);
LpResult lp_feasible(const MomentVector& t, long grid_size, const Rational& tolerance);

} // namespace momentlab

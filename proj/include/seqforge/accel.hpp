#pragma once

#include <functional>
#include <span>
#include <vector>

#include "seqforge/corr.hpp"

namespace seqforge {

/// One fixed-point map application: unit-modulus iterate in, unit-modulus
/// iterate out.
using IterationMap = std::function<std::vector<cxd>(std::span<const cxd>)>;

/// Objective value at an iterate (lower is better). Must be the same
/// objective the map descends on.
using ObjectiveFn = std::function<double(std::span<const cxd>)>;

struct SquaremOptions {
    /// ||x1 - x||_2 below fixed_point_tol * sqrt(N) counts as converged.
    double fixed_point_tol = 1e-14;
    /// Step-halving budget before falling back to the plain double step.
    int max_backtracks = 64;
};

struct SquaremOutcome {
    std::vector<cxd> x;   ///< accepted next iterate (unit modulus)
    double objective;     ///< objective at x
    int backtracks = 0;   ///< halvings spent this step
    int map_calls = 0;    ///< map applications this step (2, or 1 at a fixed point)
    bool fixed_point = false;
    bool fallback = false; ///< halving budget exhausted, returned the double step
};

/// One squared-extrapolation step around a monotone fixed-point map:
/// x1 = map(x), x2 = map(x1), d = x1 - x, v = x2 - x1 - d,
/// alpha = -||d|| / ||v|| (clamped to -1 from above), candidate
/// P(x - 2*alpha*d + alpha^2*v) with P the elementwise phase projection.
/// While the candidate's objective exceeds objective_at_x, alpha moves toward
/// -1 via alpha <- (alpha - 1)/2; alpha = -1 reproduces x2 exactly. Norms are
/// plain Euclidean over the complex entries. Degenerate branches: a fixed
/// point returns x1; ||v|| = 0 with d != 0 returns x2; exhausting the halving
/// budget returns x2 and flags the fallback.
SquaremOutcome squarem_step(const IterationMap& map, const ObjectiveFn& objective,
                            std::span<const cxd> x, double objective_at_x,
                            const SquaremOptions& opts = {});

} // namespace seqforge

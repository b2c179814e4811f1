#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bellqst {

struct SimplexOptions {
    /// Initial simplex edge length along each coordinate.
    double initial_step = 0.1;
    /// Stop when max(f) - min(f) over the simplex <= rel_tol * max(1, |min f|).
    double rel_tol = 1e-10;
    long max_evals = 200000;
    /// After the stopping rule fires, rebuild the simplex around the best vertex and continue,
    /// at most this many times, while doing so still improves the objective.
    int max_rebuilds = 4;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex descent with dimension-adapted coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
SimplexResult nelder_mead(const Objective& f, std::span<const double> start,
                          const SimplexOptions& opts);

}  // namespace bellqst

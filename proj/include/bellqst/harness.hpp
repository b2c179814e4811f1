#pragma once

#include <span>
#include <string>
#include <vector>

#include "bellqst/config.hpp"
#include "bellqst/metrics.hpp"
#include "bellqst/mle.hpp"
#include "bellqst/states.hpp"

namespace bellqst {

struct StateResult {
    double sigma = 0.0;
    int state_index = 0;
    double phase = 0.0;
    double fidelity = 0.0;
    double concurrence = 0.0;
    bool converged = false;
};

/// Statistics over the converged states at one sigma. When none converged the stats have
/// count 0 and NaN mean and std.
struct SigmaAggregate {
    double sigma = 0.0;
    SampleStats fidelity_stats;
    SampleStats concurrence_stats;
    int n_nonconverged = 0;
};

struct RunResult {
    std::string scenario_id;
    std::vector<StateResult> per_state;  // sigma-major, then state index
    std::vector<SigmaAggregate> per_sigma;
};

struct RunOptions {
    int threads = 1;
    MleOptions mle{};
};

/// Simulate, reconstruct and score every (sigma, state) cell. Random streams are keyed by the
/// master seed, the sigma value and the state index, so the scenario id and the thread count
/// have no influence on the numbers.
RunResult run_sweep(const Scenario& s, const RunOptions& opts = {});

SigmaAggregate aggregate(double sigma, std::span<const StateResult> states);

struct ScanPoint {
    double theta = 0.0;
    double mean_count = 0.0;
    double std_count = 0.0;     // population std over repetitions
    double theory_count = 0.0;  // n_mean * Tr(M(theta) rho~) without rotation errors
};

/// Rotating-analyzer scan. Each repetition draws a fresh fixed-arm error and fresh
/// rotating-arm errors at every angle.
std::vector<ScanPoint> run_scan(const ScanSpec& spec, const DensityMatrix& state);

struct ComparisonTable {
    std::vector<double> sigma_grid;
    std::vector<std::string> scenario_ids;
    std::vector<std::vector<SigmaAggregate>> columns;  // one per scenario, aligned with the grid
};

/// Side-by-side per-sigma aggregates. Throws std::invalid_argument when grids differ.
ComparisonTable compare_results(const std::vector<RunResult>& results);
ComparisonTable compare_scenarios(const std::vector<Scenario>& scenarios,
                                  const RunOptions& opts = {});

/// Sigma values whose mean concurrence exceeds 1/sqrt(2).
std::vector<double> chsh_violation_region(const RunResult& r);

}  // namespace bellqst

#include "bellqst/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bellqst/noise.hpp"
#include "bellqst/polarimetry.hpp"
#include "bellqst/rng.hpp"

namespace bellqst {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

SampleStats stats_or_nan(const std::vector<double>& v) {
    if (v.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, 0};
    }
    return sample_stats(v);
}

}  // namespace

SigmaAggregate aggregate(double sigma, std::span<const StateResult> states) {
    std::vector<double> f, c;
    int nonconverged = 0;
    for (const StateResult& r : states) {
        if (!r.converged) {
            ++nonconverged;
            continue;
        }
        f.push_back(r.fidelity);
        c.push_back(r.concurrence);
    }
    return {sigma, stats_or_nan(f), stats_or_nan(c), nonconverged};
}

RunResult run_sweep(const Scenario& s, const RunOptions& opts) {
    s.validate();
    const MeasurementSet mset = build_measurement_set();
    const std::vector<BellFamily> states = phase_sample(s.family_tag, s.sample_size);
    const std::size_t n_states = states.size();
    const RngStream root = RngStream(s.master_seed).child("sweep");

    RunResult out;
    out.scenario_id = s.scenario_id;
    out.per_state.resize(s.sigma_grid.size() * n_states);

    parallel_for(out.per_state.size(), opts.threads, [&](std::size_t cell) {
        const std::size_t si = cell / n_states;
        const std::size_t k = cell % n_states;
        const double sigma = s.sigma_grid[si];
        const CVec ket = bell_state(states[k]);
        const DensityMatrix rho = pure_density(ket);

        const NoiseConfig cfg{sigma, s.p, s.n_mean, s.poisson_enabled, s.master_seed};
        const RngStream rng = root.child_for_value(sigma).child(static_cast<std::uint64_t>(k));
        const Counts counts = simulate_counts(rho, mset, cfg, rng);

        StateResult& r = out.per_state[cell];
        r.sigma = sigma;
        r.state_index = static_cast<int>(k);
        r.phase = states[k].phase;
        try {
            const MleReport rep = reconstruct(counts, mset, s.n_mean, opts.mle);
            r.fidelity = fidelity_pure(ket, rep.rho);
            r.concurrence = concurrence(rep.rho);
            r.converged = rep.converged;
        } catch (const std::exception&) {
            // a failed reconstruction is flagged, never fatal to the sweep
            r.fidelity = std::numeric_limits<double>::quiet_NaN();
            r.concurrence = std::numeric_limits<double>::quiet_NaN();
            r.converged = false;
        }
    });

    for (std::size_t si = 0; si < s.sigma_grid.size(); ++si) {
        const std::span<const StateResult> block(out.per_state.data() + si * n_states, n_states);
        out.per_sigma.push_back(aggregate(s.sigma_grid[si], block));
    }
    return out;
}

std::vector<ScanPoint> run_scan(const ScanSpec& spec, const DensityMatrix& state) {
    spec.validate();
    const NoiseConfig cfg{spec.sigma, spec.p, spec.n_mean, spec.poisson_enabled,
                          spec.master_seed};
    const RngStream root = RngStream(spec.master_seed).child("scan");
    const std::size_t n = spec.theta_grid.size();

    std::vector<std::vector<double>> samples(n);
    for (auto& v : samples) v.reserve(static_cast<std::size_t>(spec.repetitions));
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        const RngStream rep_rng = root.child(static_cast<std::uint64_t>(rep));
        RngStream fixed = rep_rng.child("fixed");
        const CMat fixed_error = draw_perturbation(spec.sigma, fixed);
        const std::vector<double> counts =
            simulate_scan(state, spec.theta_grid, cfg, fixed_error, rep_rng.child("rotating"));
        for (std::size_t j = 0; j < n; ++j) samples[j].push_back(counts[j]);
    }

    const CMat mixed = with_dark_counts(state, spec.p).mat();
    std::vector<ScanPoint> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = spec.theta_grid[j];
        const SampleStats st = sample_stats(samples[j]);
        const double theory =
            spec.n_mean * std::max(0.0, trace_product(scan_operator(theta), mixed).real());
        out.push_back({theta, st.mean, st.std_dev, theory});
    }
    return out;
}

ComparisonTable compare_results(const std::vector<RunResult>& results) {
    if (results.empty()) throw std::invalid_argument("compare: no scenarios");
    ComparisonTable t;
    for (const SigmaAggregate& a : results.front().per_sigma) t.sigma_grid.push_back(a.sigma);
    for (const RunResult& r : results) {
        if (r.per_sigma.size() != t.sigma_grid.size()) {
            throw std::invalid_argument("compare: sigma grids differ in length");
        }
        for (std::size_t i = 0; i < t.sigma_grid.size(); ++i) {
            if (r.per_sigma[i].sigma != t.sigma_grid[i]) {
                throw std::invalid_argument("compare: sigma grids differ");
            }
        }
        t.scenario_ids.push_back(r.scenario_id);
        t.columns.push_back(r.per_sigma);
    }
    return t;
}

ComparisonTable compare_scenarios(const std::vector<Scenario>& scenarios,
                                  const RunOptions& opts) {
    if (scenarios.empty()) throw std::invalid_argument("compare: no scenarios");
    for (const Scenario& s : scenarios) {
        if (s.sigma_grid != scenarios.front().sigma_grid) {
            throw std::invalid_argument("compare: scenario '" + s.scenario_id +
                                        "' has a different sigma grid");
        }
    }
    std::vector<RunResult> results;
    for (const Scenario& s : scenarios) results.push_back(run_sweep(s, opts));
    return compare_results(results);
}

std::vector<double> chsh_violation_region(const RunResult& r) {
    std::vector<double> out;
    for (const SigmaAggregate& a : r.per_sigma) {
        if (a.concurrence_stats.count > 0 && a.concurrence_stats.mean > std::numbers::sqrt2 / 2) {
            out.push_back(a.sigma);
        }
    }
    return out;
}

}  // namespace bellqst

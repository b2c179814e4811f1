#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "bellqst/matcore.hpp"
#include "bellqst/nelder_mead.hpp"
#include "bellqst/noise.hpp"
#include "bellqst/polarimetry.hpp"
#include "bellqst/states.hpp"

namespace bellqst {

/// Sixteen reals t1..t16 filling the lower-triangular T:
///
///     [ t1        0         0        0  ]
///     [ t5+it6    t2        0        0  ]
///     [ t11+it12  t7+it8    t3       0  ]
///     [ t15+it16  t13+it14  t9+it10  t4 ]
///
/// stored zero-based (t[0] is t1).
using CholeskyParams = std::array<double, 16>;

class DegenerateParamsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Floor applied to expected counts inside the likelihood.
inline constexpr double kLikelihoodFloor = 1e-9;

CMat cholesky_factor(const CholeskyParams& t);

/// T^dagger T / Tr(T^dagger T). Throws DegenerateParamsError when the trace is below 1e-30.
DensityMatrix rho_from_params(const CholeskyParams& t);

/// Inverse of rho_from_params for a (regularized) density matrix; the result reproduces `rho`
/// up to the mixing weight `regularize` with the maximally mixed state.
CholeskyParams params_from_density(const CMat& rho, double regularize = 1e-3);

/// n_mean * Tr(M_k rho(t)) with the unperturbed operators.
Counts expected_counts(const CholeskyParams& t, const MeasurementSet& mset, double n_mean);

/// sum_k (m_k - e_k)^2 / max(e_k, eps) + ln max(e_k, eps)
double likelihood(std::span<const double> measured, std::span<const double> expected);

/// Least-squares inversion of the count equations, projected onto the physical states by
/// clipping negative eigenvalues and renormalizing.
CMat linear_inversion(std::span<const double> measured, const MeasurementSet& mset,
                      double n_mean);

struct MleOptions {
    int restarts = 5;
    SimplexOptions simplex{};
    /// Restart 0 starts from t1..t4 = 1/2, restart 1 from the linear-inversion estimate, and
    /// later restarts from that estimate plus seeded Gaussian jitter of this std-dev.
    double start_jitter = 0.05;
    std::uint64_t seed = 0x5eed;
};

struct MleReport {
    DensityMatrix rho;
    CholeskyParams params{};
    double final_objective = 0.0;
    long evaluations = 0;
    int restarts_used = 0;
    bool converged = false;
};

MleReport reconstruct(std::span<const double> measured, const MeasurementSet& mset,
                      double n_mean, const MleOptions& opts = {});

}  // namespace bellqst

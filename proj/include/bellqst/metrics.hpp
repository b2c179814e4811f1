#pragma once

#include <span>

#include "bellqst/matcore.hpp"
#include "bellqst/states.hpp"

namespace bellqst {

struct SampleStats {
    double mean = 0.0;
    double std_dev = 0.0;  // population convention (divide by count)
    int count = 0;
};

/// <x|rho|x>, clamped to [0, 1].
double fidelity_pure(const CVec& x, const DensityMatrix& rho);

/// (sy (x) sy) rho* (sy (x) sy) in the computational basis.
CMat spin_flip(const DensityMatrix& rho);

/// Wootters concurrence max(0, a1 - a2 - a3 - a4), where the a_i are the square roots of the
/// eigenvalues of rho * spin_flip(rho), evaluated as singular values of W^T (sy (x) sy) W
/// for rho = W W^dagger.
double concurrence(const DensityMatrix& rho);

/// Same quantity from gen_eigvals(rho * spin_flip(rho)). Loses about half the digits for
/// rank-deficient rho.
double concurrence_via_eigvals(const DensityMatrix& rho);

/// Concurrence from the Hermitian eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)).
/// Slower than `concurrence`; kept as an independent route for cross-checking.
double concurrence_via_r_matrix(const DensityMatrix& rho);

SampleStats sample_stats(std::span<const double> values);

}  // namespace bellqst

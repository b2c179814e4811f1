#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellqst/matcore.hpp"
#include "bellqst/polarimetry.hpp"
#include "bellqst/rng.hpp"
#include "bellqst/states.hpp"

namespace bellqst {

/// One point of the noise space.
struct NoiseConfig {
    double sigma = 0.0;      // std-dev of the rotation angles, radians
    double p = 0.0;          // dark count rate
    double n_mean = 1000.0;  // average photon pairs per measurement
    bool poisson_enabled = true;
    std::uint64_t master_seed = 0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

using Counts = std::array<double, kNumMeasurements>;

/// [[e^{i w1/2} cos w3, -i e^{i w2} sin w3], [-i e^{-i w2} sin w3, e^{-i w1/2} cos w3]]
CMat random_unitary(double omega1, double omega2, double omega3);

/// U(w) (x) U(w') with six angles drawn from Normal(0, sigma^2). sigma == 0 returns the
/// identity without touching the stream.
CMat draw_perturbation(double sigma, RngStream& rng);

/// P m P^dagger with a freshly drawn P.
CMat perturb_operator(const CMat& m, double sigma, RngStream& rng);

/// Coincidence counts N_k * Tr(M~_k rho~(p)) for the 36 measurements. Measurement k draws its
/// perturbation from rng.child(k).child("perturb") and its pair number from
/// rng.child(k).child("poisson").
Counts simulate_counts(const DensityMatrix& rho, const MeasurementSet& mset,
                       const NoiseConfig& cfg, const RngStream& rng);

/// Counts for the rotating-analyzer scan. Angle j uses rng.child(j) for its perturbation and
/// pair number; `fixed_arm_error` is shared by every angle.
std::vector<double> simulate_scan(const DensityMatrix& rho, std::span<const double> thetas,
                                  const NoiseConfig& cfg, const CMat& fixed_arm_error,
                                  const RngStream& rng);

}  // namespace bellqst

#include "bellqst/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace bellqst {

void NoiseConfig::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be a finite value >= 0");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (!(n_mean > 0.0) || !std::isfinite(n_mean)) {
        throw std::invalid_argument("n_mean must be a finite value > 0");
    }
}

CMat random_unitary(double omega1, double omega2, double omega3) {
    const double c = std::cos(omega3);
    const double s = std::sin(omega3);
    return CMat{std::polar(1.0, omega1 / 2.0) * c, -kI * std::polar(1.0, omega2) * s,
                -kI * std::polar(1.0, -omega2) * s, std::polar(1.0, -omega1 / 2.0) * c};
}

CMat draw_perturbation(double sigma, RngStream& rng) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    if (sigma == 0.0) return CMat::identity(4);
    std::array<double, 6> w{};
    for (double& x : w) x = rng.normal(sigma);
    return kron(random_unitary(w[0], w[1], w[2]), random_unitary(w[3], w[4], w[5]));
}

CMat perturb_operator(const CMat& m, double sigma, RngStream& rng) {
    if (sigma == 0.0) return m;
    const CMat pert = draw_perturbation(sigma, rng);
    return pert * m * pert.adjoint();
}

namespace {

double pair_number(const NoiseConfig& cfg, RngStream rng) {
    return cfg.poisson_enabled ? rng.poisson(cfg.n_mean) : cfg.n_mean;
}

// Born probability, clipped at zero against rounding.
double probability(const CMat& op, const CMat& rho) {
    return std::max(0.0, trace_product(op, rho).real());
}

}  // namespace

Counts simulate_counts(const DensityMatrix& rho, const MeasurementSet& mset,
                       const NoiseConfig& cfg, const RngStream& rng) {
    cfg.validate();
    const CMat state = with_dark_counts(rho, cfg.p).mat();
    Counts counts{};
    for (int k = 0; k < kNumMeasurements; ++k) {
        const RngStream cell = rng.child(static_cast<std::uint64_t>(k));
        RngStream pert_rng = cell.child("perturb");
        const CMat op = perturb_operator(mset.operators[k], cfg.sigma, pert_rng);
        counts[k] = pair_number(cfg, cell.child("poisson")) * probability(op, state);
    }
    return counts;
}

std::vector<double> simulate_scan(const DensityMatrix& rho, std::span<const double> thetas,
                                  const NoiseConfig& cfg, const CMat& fixed_arm_error,
                                  const RngStream& rng) {
    cfg.validate();
    const CMat state = with_dark_counts(rho, cfg.p).mat();
    const CMat fixed_adj = fixed_arm_error.adjoint();
    std::vector<double> counts;
    counts.reserve(thetas.size());
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const RngStream cell = rng.child(static_cast<std::uint64_t>(j));
        RngStream pert_rng = cell.child("perturb");
        const CMat base = fixed_arm_error * scan_operator(thetas[j]) * fixed_adj;
        const CMat op = perturb_operator(base, cfg.sigma, pert_rng);
        counts.push_back(pair_number(cfg, cell.child("poisson")) * probability(op, state));
    }
    return counts;
}

}  // namespace bellqst

#include "bellqst/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bellqst {

namespace {

const CMat& sy_sy() {
    static const CMat m = [] {
        const CMat sy{0.0, -kI, kI, 0.0};
        return kron(sy, sy);
    }();
    return m;
}

double wootters(std::vector<double> alphas) {
    std::sort(alphas.begin(), alphas.end(), std::greater<>());
    const double c = alphas[0] - alphas[1] - alphas[2] - alphas[3];
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace

double fidelity_pure(const CVec& x, const DensityMatrix& rho) {
    const double f = inner(x, rho.mat() * x).real();
    return std::clamp(f, 0.0, 1.0);
}

CMat spin_flip(const DensityMatrix& rho) { return sy_sy() * rho.mat().conj() * sy_sy(); }

double concurrence(const DensityMatrix& rho) {
    // With rho = W W^dagger, the eigenvalues of rho * rho~ are those of tau^dagger tau for the
    // complex-symmetric tau = W^T (sy (x) sy) W, so the alphas are the singular values of tau.
    // The SVD keeps near-zero alphas at rounding level instead of at the square root of it.
    const HermitianEigen e = herm_eig(rho.mat());
    Eigen::Matrix4cd w;
    for (int i = 0; i < 4; ++i) {
        const double s = std::sqrt(std::max(e.values[static_cast<std::size_t>(i)], 0.0));
        for (int r = 0; r < 4; ++r) w(r, i) = s * e.vectors[static_cast<std::size_t>(i)][r];
    }
    Eigen::Matrix4cd yy;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) yy(r, c) = sy_sy()(r, c);
    const Eigen::Matrix4cd tau = w.transpose() * yy * w;
    const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
    return wootters({sv(0), sv(1), sv(2), sv(3)});
}

/// Eigenvalues of rho * rho~ taken directly; the square roots amplify rounding near zero.
double concurrence_via_eigvals(const DensityMatrix& rho) {
    const std::vector<Complex> eig = gen_eigvals(rho.mat() * spin_flip(rho));
    std::vector<double> alphas;
    alphas.reserve(4);
    for (const Complex& lambda : eig) alphas.push_back(std::sqrt(std::max(lambda.real(), 0.0)));
    return wootters(std::move(alphas));
}

double concurrence_via_r_matrix(const DensityMatrix& rho) {
    const CMat root = psd_sqrt(rho.mat());
    CMat inner_prod = root * spin_flip(rho) * root;
    // Restore exact Hermiticity lost to rounding before the second square root.
    inner_prod = Complex(0.5) * (inner_prod + inner_prod.adjoint());
    const CMat r = psd_sqrt(inner_prod);
    return wootters(herm_eig(r).values);
}

SampleStats sample_stats(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("sample_stats: empty sample");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    // constant samples: summation rounding must not invent a spread
    if (*lo == *hi) return {*lo, 0.0, static_cast<int>(values.size())};
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= n;
    return {mean, std::sqrt(var), static_cast<int>(values.size())};
}

}  // namespace bellqst

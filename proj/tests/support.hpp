#pragma once

// Test-side helpers. Random generators and reference computations here go through Eigen or
// explicit index formulas so they do not share code paths with the library.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bellqst/matcore.hpp"
#include "bellqst/states.hpp"

namespace testsupport {

using bellqst::CMat;
using bellqst::Complex;
using bellqst::CVec;

inline Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
    return e;
}

inline CMat from_eigen(const Eigen::MatrixXcd& e) {
    CMat m(static_cast<int>(e.rows()));
    for (int r = 0; r < e.rows(); ++r)
        for (int c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

inline Eigen::MatrixXcd gaussian(std::mt19937_64& gen, int dim, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Eigen::MatrixXcd a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = Complex(n(gen), n(gen));
    return a;
}

/// A^dagger A / tr, optionally of reduced rank.
inline CMat random_density(std::mt19937_64& gen, int rank = 4) {
    Eigen::MatrixXcd a = gaussian(gen, 4);
    for (int r = rank; r < 4; ++r) a.row(r).setZero();
    Eigen::MatrixXcd rho = a.adjoint() * a;
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return from_eigen(rho);
}

/// Haar-ish unitary from the QR of a complex Gaussian matrix.
inline CMat random_unitary(std::mt19937_64& gen, int dim) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(gen, dim));
    Eigen::MatrixXcd q = qr.householderQ();
    return from_eigen(q);
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

/// Wootters concurrence computed entirely with Eigen.
inline double reference_concurrence(const CMat& rho_in) {
    const Eigen::MatrixXcd rho = to_eigen(rho_in);
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::MatrixXcd flipped = yy * rho.conjugate() * yy;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::MatrixXcd inner = s * flipped * s;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(inner);
    Eigen::VectorXd lam = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

}  // namespace testsupport

#include "bellqst/mle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "bellqst/rng.hpp"

namespace bellqst {

namespace {

// Positions of the complex off-diagonal entries of T and the index of their real parts.
struct OffDiagonal {
    int row;
    int col;
    int re;
};
constexpr std::array<OffDiagonal, 6> kOffDiagonal = {{
    {1, 0, 4},
    {2, 1, 6},
    {3, 2, 8},
    {2, 0, 10},
    {3, 1, 12},
    {3, 0, 14},
}};

double squared_norm(const CholeskyParams& t) {
    double s = 0.0;
    for (double v : t) s += v * v;
    return s;
}

// T^dagger T without validation or normalization.
CMat gram(const CholeskyParams& t) {
    const CMat tm = cholesky_factor(t);
    return tm.adjoint() * tm;
}

// Tr(M rho) for Hermitian M and rho as a real dot product over the 16 real degrees of
// freedom of rho: diagonal, then Re and Im of the strict upper triangle.
using RealForm = std::array<double, 16>;

RealForm real_form(const CMat& m) {
    RealForm w{};
    int idx = 0;
    for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(idx++)] = m(i, i).real();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            w[static_cast<std::size_t>(idx)] = 2.0 * m(i, j).real();
            w[static_cast<std::size_t>(idx + 6)] = 2.0 * m(i, j).imag();
            ++idx;
        }
    return w;
}

// Real coordinates of T^dagger T in the layout of real_form.
RealForm gram_coordinates(const CholeskyParams& t) {
    const CMat tm = cholesky_factor(t);
    RealForm g{};
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int k = i; k < 4; ++k) s += std::norm(tm(k, i));
        g[static_cast<std::size_t>(idx++)] = s;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            // (T^dagger T)_ij = sum_k conj(T_ki) T_kj, nonzero only for k >= j
            Complex s = 0.0;
            for (int k = j; k < 4; ++k) s += std::conj(tm(k, i)) * tm(k, j);
            g[static_cast<std::size_t>(idx)] = s.real();
            g[static_cast<std::size_t>(idx + 6)] = s.imag();
            ++idx;
        }
    return g;
}

void check_size(std::span<const double> measured) {
    if (measured.size() != static_cast<std::size_t>(kNumMeasurements)) {
        throw std::invalid_argument("expected 36 measured counts");
    }
    for (double m : measured) {
        if (!std::isfinite(m)) throw std::invalid_argument("measured counts must be finite");
    }
}

}  // namespace

CMat cholesky_factor(const CholeskyParams& t) {
    CMat tm(4);
    for (int i = 0; i < 4; ++i) tm(i, i) = t[static_cast<std::size_t>(i)];
    for (const auto& od : kOffDiagonal) {
        tm(od.row, od.col) = Complex(t[static_cast<std::size_t>(od.re)],
                                     t[static_cast<std::size_t>(od.re + 1)]);
    }
    return tm;
}

DensityMatrix rho_from_params(const CholeskyParams& t) {
    for (double v : t) {
        if (!std::isfinite(v)) throw std::invalid_argument("Cholesky parameters must be finite");
    }
    const double norm = squared_norm(t);
    if (norm <= 1e-30) throw DegenerateParamsError("Cholesky parameters are (numerically) zero");
    CMat rho = gram(t);
    rho *= 1.0 / rho.trace().real();
    // Products of a matrix with its adjoint are Hermitian up to rounding; make it exact.
    rho = Complex(0.5) * (rho + rho.adjoint());
    return DensityMatrix(rho);
}

CholeskyParams params_from_density(const CMat& rho, double regularize) {
    if (rho.dim() != 4) throw std::invalid_argument("params_from_density: expected 4x4");
    // rho = T^dagger T with T lower triangular is the reversed-index Cholesky factorization:
    // J rho J = L L^dagger with L lower triangular, and T = J L^dagger J.
    CMat mixed = Complex(1.0 - regularize) * rho;
    for (int i = 0; i < 4; ++i) mixed(i, i) += regularize / 4.0;

    CMat rev(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rev(r, c) = mixed(3 - r, 3 - c);

    CMat l(4);
    for (int j = 0; j < 4; ++j) {
        double d = rev(j, j).real();
        for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) throw NotPsdError("params_from_density: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < 4; ++i) {
            Complex s = rev(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }

    // T(r, c) = conj(L(3 - c, 3 - r))
    CholeskyParams t{};
    for (int i = 0; i < 4; ++i) t[static_cast<std::size_t>(i)] = l(3 - i, 3 - i).real();
    for (const auto& od : kOffDiagonal) {
        const Complex v = std::conj(l(3 - od.col, 3 - od.row));
        t[static_cast<std::size_t>(od.re)] = v.real();
        t[static_cast<std::size_t>(od.re + 1)] = v.imag();
    }
    return t;
}

Counts expected_counts(const CholeskyParams& t, const MeasurementSet& mset, double n_mean) {
    const CMat rho = rho_from_params(t).mat();
    Counts out{};
    for (int k = 0; k < kNumMeasurements; ++k) {
        out[k] = n_mean * std::max(0.0, trace_product(mset.operators[k], rho).real());
    }
    return out;
}

double likelihood(std::span<const double> measured, std::span<const double> expected) {
    if (measured.size() != expected.size()) {
        throw std::invalid_argument("likelihood: size mismatch");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double e = std::max(expected[k], kLikelihoodFloor);
        const double r = measured[k] - expected[k];
        total += r * r / e + std::log(e);
    }
    return total;
}

CMat linear_inversion(std::span<const double> measured, const MeasurementSet& mset,
                      double n_mean) {
    check_size(measured);
    // rho = (1/4) sum_ab r_ab sigma_a (x) sigma_b; each count equation is linear and real in r.
    const std::array<CMat, 4> pauli = {CMat::identity(2), CMat{0.0, 1.0, 1.0, 0.0},
                                       CMat{0.0, -kI, kI, 0.0}, CMat{1.0, 0.0, 0.0, -1.0}};
    std::array<CMat, 16> basis;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) basis[4 * a + b] = kron(pauli[a], pauli[b]);

    Eigen::Matrix<double, kNumMeasurements, 16> design;
    Eigen::Matrix<double, kNumMeasurements, 1> rhs;
    for (int k = 0; k < kNumMeasurements; ++k) {
        for (int j = 0; j < 16; ++j) {
            design(k, j) = 0.25 * trace_product(mset.operators[k], basis[j]).real();
        }
        rhs(k) = measured[k] / n_mean;
    }
    const Eigen::Matrix<double, 16, 1> coeff = design.colPivHouseholderQr().solve(rhs);

    CMat rho(4);
    for (int j = 0; j < 16; ++j) rho += Complex(0.25 * coeff(j)) * basis[j];
    rho = Complex(0.5) * (rho + rho.adjoint());

    const HermitianEigen eig = herm_eig(rho);
    CMat projected(4);
    double total = 0.0;
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        const double lambda = std::max(eig.values[i], 0.0);
        if (lambda == 0.0) continue;
        total += lambda;
        projected += Complex(lambda) * CMat::outer(eig.vectors[i], eig.vectors[i]);
    }
    if (!(total > 1e-12)) return Complex(0.25) * CMat::identity(4);
    projected *= 1.0 / total;
    return Complex(0.5) * (projected + projected.adjoint());
}

MleReport reconstruct(std::span<const double> measured, const MeasurementSet& mset,
                      double n_mean, const MleOptions& opts) {
    check_size(measured);
    if (!(n_mean > 0.0)) throw std::invalid_argument("n_mean must be > 0");
    if (opts.restarts < 1) throw std::invalid_argument("restarts must be >= 1");

    std::array<RealForm, kNumMeasurements> forms;
    for (int k = 0; k < kNumMeasurements; ++k) forms[k] = real_form(mset.operators[k]);

    const Objective objective = [&](std::span<const double> x) {
        CholeskyParams t;
        std::copy(x.begin(), x.end(), t.begin());
        const double norm = squared_norm(t);
        if (!(norm > 1e-30) || !std::isfinite(norm)) {
            return std::numeric_limits<double>::infinity();
        }
        const RealForm g = gram_coordinates(t);
        const double scale = n_mean / norm;  // Tr(T^dagger T) equals the squared norm of t
        Counts expected;
        for (int k = 0; k < kNumMeasurements; ++k) {
            double dot = 0.0;
            for (std::size_t j = 0; j < 16; ++j) dot += forms[k][j] * g[j];
            expected[k] = std::max(0.0, scale * dot);
        }
        return likelihood(measured, expected);
    };

    const CMat inverted = linear_inversion(measured, mset, n_mean);
    CholeskyParams warm{};
    for (double reg : {1e-12, 1e-6, 1e-3, 1e-1}) {
        try {
            warm = params_from_density(inverted, reg);
            break;
        } catch (const NotPsdError&) {
            // rounding left a non-positive pivot; mix in more of the identity
        }
    }
    RngStream jitter(opts.seed);

    std::optional<SimplexResult> best;
    long evaluations = 0;
    for (int restart = 0; restart < opts.restarts; ++restart) {
        CholeskyParams start{};
        if (restart == 0) {
            std::fill(start.begin(), start.begin() + 4, 0.5);
        } else if (restart == 1) {
            start = warm;
        } else {
            RngStream rs = jitter.child(static_cast<std::uint64_t>(restart));
            for (std::size_t i = 0; i < start.size(); ++i) {
                start[i] = warm[i] + rs.normal(opts.start_jitter);
            }
        }
        SimplexResult res = nelder_mead(objective, start, opts.simplex);
        evaluations += res.evaluations;
        if (!best || res.value < best->value) best = std::move(res);
    }

    CholeskyParams t{};
    std::copy(best->x.begin(), best->x.end(), t.begin());
    return MleReport{rho_from_params(t), t, best->value, evaluations, opts.restarts,
                     best->converged};
}

}  // namespace bellqst

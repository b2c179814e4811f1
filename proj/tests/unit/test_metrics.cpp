#include <doctest.h>

#include <numbers>

#include "bellqst/metrics.hpp"
#include "support.hpp"

using namespace bellqst;
using std::numbers::pi;

TEST_CASE("fidelity_pure examples") {
    const CVec phi = bell_state({FamilyTag::Phi, 0.0});
    CHECK(fidelity_pure(phi, pure_density(phi)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity_pure(phi, DensityMatrix(Complex(0.25) * CMat::identity(4))) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(fidelity_pure(phi, pure_density(bell_state({FamilyTag::Phi, pi}))) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity_pure(CVec{1.0, 0.0}, pure_density(phi)), std::invalid_argument);
}

TEST_CASE("spin_flip examples") {
    const DensityMatrix phi = pure_density(bell_state({FamilyTag::Phi, 0.0}));
    CHECK(spin_flip(phi).max_abs_diff(phi.mat()) < 1e-15);
    const CMat mixed = Complex(0.25) * CMat::identity(4);
    CHECK(spin_flip(DensityMatrix(mixed)).max_abs_diff(mixed) < 1e-15);

    std::mt19937_64 gen(51);
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho(testsupport::random_density(gen));
        const CMat f = spin_flip(rho);
        CHECK(spin_flip(DensityMatrix(f)).max_abs_diff(rho.mat()) < 1e-12);
        CHECK(std::abs(f.trace() - 1.0) < 1e-12);
    }
}

TEST_CASE("concurrence examples") {
    for (FamilyTag tag : {FamilyTag::Phi, FamilyTag::Psi})
        for (double phase : {0.0, pi}) {
            CHECK(concurrence(pure_density(bell_state({tag, phase}))) == doctest::Approx(1.0).epsilon(1e-9));
        }
    CHECK(concurrence(pure_density(CVec{0.0, 1.0, 0.0, 0.0})) == doctest::Approx(0.0));
    const DensityMatrix w = with_dark_counts(pure_density(bell_state({FamilyTag::Phi, 0.0})), 0.25);
    CHECK(concurrence(w) == doctest::Approx(0.625).epsilon(1e-10));
    CHECK(concurrence_via_r_matrix(w) == doctest::Approx(0.625).epsilon(1e-10));
}

TEST_CASE("Werner family closed form on a 50-point grid") {
    const DensityMatrix phi = pure_density(bell_state({FamilyTag::Phi, 0.0}));
    for (int i = 0; i < 50; ++i) {
        const double p = i / 49.0;
        const double expected = std::max(0.0, 1.0 - 1.5 * p);
        const DensityMatrix w = with_dark_counts(phi, p);
        CHECK(std::abs(concurrence(w) - expected) < 1e-8);
        CHECK(std::abs(testsupport::reference_concurrence(w.mat()) - expected) < 1e-8);
        if (p >= 2.0 / 3.0) CHECK(concurrence(w) == 0.0);
    }
}

TEST_CASE("concurrence routes agree on random full-rank states") {
    std::mt19937_64 gen(52);
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho(testsupport::random_density(gen));
        const double c = concurrence(rho);
        CHECK(std::abs(c - concurrence_via_r_matrix(rho)) < 1e-8);
        CHECK(std::abs(c - concurrence_via_eigvals(rho)) < 1e-8);
        CHECK(std::abs(c - testsupport::reference_concurrence(rho.mat())) < 1e-8);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("concurrence of pure states matches 2|ad - bc|") {
    std::mt19937_64 gen(54);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        CVec x{Complex(n(gen), n(gen)), Complex(n(gen), n(gen)), Complex(n(gen), n(gen)),
               Complex(n(gen), n(gen))};
        x *= 1.0 / x.norm();
        const double expected = 2.0 * std::abs(x[0] * x[3] - x[1] * x[2]);
        CHECK(std::abs(concurrence(pure_density(x)) - expected) < 1e-12);
    }
}

TEST_CASE("concurrence on rank-deficient mixtures") {
    // the square-root routes lose about half their digits here, hence the looser bound
    std::mt19937_64 gen(55);
    for (int i = 0; i < 300; ++i) {
        const DensityMatrix rho(testsupport::random_density(gen, 2 + i % 2));
        CHECK(std::abs(concurrence(rho) - testsupport::reference_concurrence(rho.mat())) < 1e-7);
        CHECK(std::abs(concurrence(rho) - concurrence_via_r_matrix(rho)) < 1e-7);
    }
}

TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937_64 gen(53);
    for (int i = 0; i < 300; ++i) {
        const DensityMatrix rho(testsupport::random_density(gen, 1 + i % 4));
        const CMat u = kron(testsupport::random_unitary(gen, 2), testsupport::random_unitary(gen, 2));
        CMat rotated = u * rho.mat() * u.adjoint();
        rotated = Complex(0.5) * (rotated + rotated.adjoint());
        CHECK(std::abs(concurrence(rho) - concurrence(DensityMatrix(rotated))) < 1e-8);

        const CVec x = bell_state({i % 2 ? FamilyTag::Phi : FamilyTag::Psi, 0.1 * i});
        const double f = fidelity_pure(x, rho);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("sample_stats examples") {
    const std::vector<double> ones{1, 1, 1};
    SampleStats s = sample_stats(ones);
    CHECK(s.mean == 1.0);
    CHECK(s.std_dev == 0.0);
    CHECK(s.count == 3);
    const std::vector<double> two{0, 1};
    s = sample_stats(two);
    CHECK(s.mean == 0.5);
    CHECK(s.std_dev == 0.5);
    const std::vector<double> single{0.7};
    s = sample_stats(single);
    CHECK(s.mean == 0.7);
    CHECK(s.std_dev == 0.0);
    // repeated non-representable values still give an exact zero spread
    const std::vector<double> tenths(50, 0.1);
    CHECK(sample_stats(tenths).std_dev == 0.0);
    CHECK_THROWS_AS(sample_stats(std::vector<double>{}), std::invalid_argument);
}

#include <doctest.h>

#include <numbers>

#include "bellqst/metrics.hpp"
#include "bellqst/polarimetry.hpp"
#include "bellqst/states.hpp"
#include "support.hpp"

using namespace bellqst;
using std::numbers::pi;

namespace {
const double kH = std::numbers::sqrt2 / 2;

double vec_diff(const CVec& a, const CVec& b) {
    double d = 0.0;
    for (int i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}
}  // namespace

TEST_CASE("bell_state examples") {
    CHECK(vec_diff(bell_state({FamilyTag::Phi, 0.0}), CVec{kH, 0.0, 0.0, kH}) < 1e-15);
    CHECK(vec_diff(bell_state({FamilyTag::Psi, 0.0}), CVec{0.0, kH, kH, 0.0}) < 1e-15);
    CHECK(vec_diff(bell_state({FamilyTag::Phi, pi}), CVec{kH, 0.0, 0.0, -kH}) < 1e-15);
}

TEST_CASE("bell_state has unit norm for random phases") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    for (int i = 0; i < 10000; ++i) {
        const FamilyTag tag = i % 2 ? FamilyTag::Psi : FamilyTag::Phi;
        CHECK(std::abs(bell_state({tag, u(gen)}).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("family names") {
    CHECK(parse_family("phi") == FamilyTag::Phi);
    CHECK(parse_family("PSI") == FamilyTag::Psi);
    CHECK(std::string(family_name(FamilyTag::Psi)) == "psi");
    CHECK_THROWS_AS(parse_family("omega"), std::invalid_argument);
}

TEST_CASE("pure_density examples") {
    const DensityMatrix d = pure_density(CVec{1.0, 0.0, 0.0, 0.0});
    CHECK(d.mat().max_abs_diff(CMat::diag({1.0, 0.0, 0.0, 0.0})) == 0.0);

    const CMat phi = pure_density(bell_state({FamilyTag::Phi, 0.0})).mat();
    CMat expected(4);
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    CHECK(phi.max_abs_diff(expected) < 1e-15);

    const auto e = herm_eig(phi);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(e.values[i]) < 1e-12);

    CHECK_THROWS_AS(pure_density(CVec{1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pure_density(CVec{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation witnesses") {
    CHECK_THROWS_AS(DensityMatrix(CMat::identity(4)), std::invalid_argument);  // trace 4
    CHECK_THROWS_AS(DensityMatrix(Complex(0.5) * CMat::identity(2)), std::invalid_argument);
    CMat nonherm = Complex(0.25) * CMat::identity(4);
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{nonherm}, std::invalid_argument);
    CHECK_FALSE(DensityMatrix::physicality_violation(nonherm).empty());
    const CMat negative = CMat::diag({0.6, 0.6, -0.2, 0.0});
    CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
    CMat nan = Complex(0.25) * CMat::identity(4);
    nan(2, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(DensityMatrix{nan}, std::invalid_argument);
    CHECK(DensityMatrix::physicality_violation(Complex(0.25) * CMat::identity(4)).empty());
}

TEST_CASE("with_dark_counts examples and properties") {
    const DensityMatrix phi = pure_density(bell_state({FamilyTag::Phi, 0.0}));
    CHECK(with_dark_counts(phi, 0.0).mat().max_abs_diff(phi.mat()) == 0.0);
    CHECK(with_dark_counts(phi, 1.0).mat().max_abs_diff(Complex(0.25) * CMat::identity(4)) < 1e-15);
    CHECK(concurrence(with_dark_counts(phi, 0.25)) == doctest::Approx(0.625).epsilon(1e-10));
    CHECK(testsupport::reference_concurrence(with_dark_counts(phi, 0.25).mat()) ==
          doctest::Approx(0.625).epsilon(1e-10));
    CHECK_THROWS_AS(with_dark_counts(phi, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(with_dark_counts(phi, 1.01), std::invalid_argument);

    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const DensityMatrix rho(testsupport::random_density(gen, 1 + i % 4));
        const double p1 = u(gen), p2 = u(gen);
        const CMat a = with_dark_counts(rho, p1).mat();
        const CMat b = with_dark_counts(rho, p2).mat();
        const CMat mid = with_dark_counts(rho, 0.5 * p1 + 0.5 * p2).mat();
        CHECK(mid.max_abs_diff(Complex(0.5) * a + Complex(0.5) * b) < 1e-12);
        CHECK(std::abs(a.trace() - 1.0) < 1e-12);
        CHECK(a.hermiticity_error() < 1e-12);
        CHECK(herm_eig(a).values.back() > -1e-10);
    }
}

TEST_CASE("phase_sample examples") {
    const auto four = phase_sample(FamilyTag::Phi, 4);
    REQUIRE(four.size() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(four[j].tag == FamilyTag::Phi);
        CHECK(four[j].phase == doctest::Approx(j * pi / 2).epsilon(1e-15));
    }
    const auto one = phase_sample(FamilyTag::Psi, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].phase == 0.0);
    CHECK(one[0].tag == FamilyTag::Psi);

    const auto many = phase_sample(FamilyTag::Phi, 200);
    REQUIRE(many.size() == 200);
    for (std::size_t j = 1; j < many.size(); ++j)
        CHECK(many[j].phase - many[j - 1].phase == doctest::Approx(pi / 100).epsilon(1e-12));
    CHECK(many.back().phase < 2 * pi);
    CHECK_THROWS_AS(phase_sample(FamilyTag::Phi, 0), std::invalid_argument);
}

TEST_CASE("maximal entanglement is phase independent") {
    for (const auto& f : phase_sample(FamilyTag::Phi, 50)) {
        CHECK(concurrence(pure_density(bell_state(f))) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(concurrence(pure_density(bell_state({FamilyTag::Psi, f.phase}))) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("polarization kets") {
    CHECK(vec_diff(pol_ket(Polarization::H), CVec{1.0, 0.0}) == 0.0);
    CHECK(std::abs(inner(pol_ket(Polarization::D), pol_ket(Polarization::A))) < 1e-12);
    CHECK(std::abs(inner(pol_ket(Polarization::H), pol_ket(Polarization::V))) < 1e-12);
    CHECK(std::abs(inner(pol_ket(Polarization::L), pol_ket(Polarization::R))) < 1e-12);
    CHECK(std::norm(inner(pol_ket(Polarization::H), pol_ket(Polarization::R))) ==
          doctest::Approx(0.5).epsilon(1e-12));
    for (Polarization p : kPolarizationOrder) CHECK(std::abs(pol_ket(p).norm() - 1.0) < 1e-12);
    CHECK(std::string(1, polarization_label(Polarization::L)) == "L");
}

TEST_CASE("measurement set examples and ordering") {
    const MeasurementSet m = build_measurement_set();
    const CMat phi = pure_density(bell_state({FamilyTag::Phi, 0.0})).mat();
    CHECK(m.labels[0] == "HH");
    CHECK(m.labels[1] == "HV");
    CHECK(m.labels[6] == "VH");
    CHECK(m.labels[35] == "RR");
    CHECK(trace_product(m.operators[0], phi).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(trace_product(m.operators[1], phi)) < 1e-12);
    CHECK(std::abs(trace_product(m.operators[measurement_index("RR")], phi)) < 1e-12);
    CHECK(measurement_index("DA") == 6 * 2 + 3);
    CHECK_THROWS_AS(measurement_index("HX"), std::invalid_argument);
    CHECK_THROWS_AS(measurement_index("HHH"), std::invalid_argument);

    for (int k = 0; k < kNumMeasurements; ++k) {
        const CMat& op = m.operators[k];
        CHECK((op * op).max_abs_diff(op) < 1e-12);
        CHECK(op.hermiticity_error() < 1e-15);
        CHECK(std::abs(op.trace() - 1.0) < 1e-12);
        const CVec expected = [&] {
            const CVec a = pol_ket(kPolarizationOrder[k / 6]);
            const CVec b = pol_ket(kPolarizationOrder[k % 6]);
            return CVec{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
        }();
        CHECK(op.max_abs_diff(CMat::outer(expected, expected)) < 1e-15);
    }
}

TEST_CASE("per basis pair probabilities sum to one") {
    const MeasurementSet m = build_measurement_set();
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const CMat rho = testsupport::random_density(gen);
        for (int bi = 0; bi < 3; ++bi)
            for (int bj = 0; bj < 3; ++bj) {
                double sum = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        sum += trace_product(m.operators[6 * (2 * bi + a) + 2 * bj + b], rho).real();
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
            }
    }
}

TEST_CASE("scan operator") {
    const CMat phi = pure_density(bell_state({FamilyTag::Phi, 0.0})).mat();
    CHECK(std::abs(trace_product(scan_operator(0.0), phi)) < 1e-15);
    CHECK(trace_product(scan_operator(pi / 2), phi).real() == doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 gen(24);
    for (int i = 0; i < 200; ++i) {
        const double theta = 2 * pi * i / 200.0;
        CHECK(trace_product(scan_operator(theta), phi).real() ==
              doctest::Approx(0.5 * std::sin(theta) * std::sin(theta)).epsilon(1e-12));
        const CMat rho = testsupport::random_density(gen);
        const double pr = trace_product(scan_operator(theta), rho).real();
        CHECK(pr >= -1e-12);
        CHECK(pr <= 1 + 1e-12);
        CHECK(std::abs(pr - trace_product(scan_operator(theta + 2 * pi), rho).real()) < 1e-12);
    }
}

#include "bellqst/polarimetry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellqst {

char polarization_label(Polarization pol) {
    switch (pol) {
        case Polarization::H: return 'H';
        case Polarization::V: return 'V';
        case Polarization::D: return 'D';
        case Polarization::A: return 'A';
        case Polarization::L: return 'L';
        case Polarization::R: return 'R';
    }
    return '?';
}

CVec pol_ket(Polarization pol) {
    const double h = 1.0 / std::numbers::sqrt2;
    switch (pol) {
        case Polarization::H: return CVec{1.0, 0.0};
        case Polarization::V: return CVec{0.0, 1.0};
        case Polarization::D: return CVec{h, h};
        case Polarization::A: return CVec{h, -h};
        case Polarization::L: return CVec{Complex(h), Complex(0.0, h)};
        case Polarization::R: return CVec{Complex(h), Complex(0.0, -h)};
    }
    throw std::invalid_argument("unknown polarization");
}

MeasurementSet build_measurement_set() {
    MeasurementSet set;
    for (int i = 0; i < 6; ++i) {
        const CVec a = pol_ket(kPolarizationOrder[i]);
        for (int j = 0; j < 6; ++j) {
            const CVec b = pol_ket(kPolarizationOrder[j]);
            const int k = 6 * i + j;
            CVec ab(4);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) ab[2 * r + c] = a[r] * b[c];
            set.kets[k] = ab;
            set.operators[k] = kron(CMat::outer(a, a), CMat::outer(b, b));
            set.labels[k] = {polarization_label(kPolarizationOrder[i]),
                             polarization_label(kPolarizationOrder[j])};
        }
    }
    return set;
}

int measurement_index(const std::string& label) {
    auto pos = [](char ch) {
        for (int i = 0; i < 6; ++i)
            if (polarization_label(kPolarizationOrder[i]) == ch) return i;
        return -1;
    };
    if (label.size() == 2) {
        const int i = pos(label[0]);
        const int j = pos(label[1]);
        if (i >= 0 && j >= 0) return 6 * i + j;
    }
    throw std::invalid_argument("unknown measurement label '" + label + "'");
}

CMat scan_operator(double theta) {
    const CVec h = pol_ket(Polarization::H);
    const CVec t{std::sin(theta), std::cos(theta)};
    return kron(CMat::outer(h, h), CMat::outer(t, t));
}

}  // namespace bellqst

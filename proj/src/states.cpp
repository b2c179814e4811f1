#include "bellqst/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace bellqst {

const char* family_name(FamilyTag tag) { return tag == FamilyTag::Phi ? "phi" : "psi"; }

FamilyTag parse_family(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "phi") return FamilyTag::Phi;
    if (lower == "psi") return FamilyTag::Psi;
    throw std::invalid_argument("unknown Bell family '" + name + "' (expected phi or psi)");
}

std::string DensityMatrix::physicality_violation(const CMat& m) {
    if (m.dim() != 4) return "dimension is not 4";
    if (!m.all_finite()) return "non-finite entries";
    const double herm = m.hermiticity_error();
    if (herm > kPhysicalityTolerance) return "not Hermitian (error " + std::to_string(herm) + ")";
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kPhysicalityTolerance) return "trace " + std::to_string(tr) + " != 1";
    const double lowest = herm_eig(m).values.back();
    if (lowest < -kPhysicalityTolerance) {
        return "negative eigenvalue " + std::to_string(lowest);
    }
    return {};
}

DensityMatrix::DensityMatrix(const CMat& mat) : mat_(mat) {
    if (const std::string why = physicality_violation(mat); !why.empty()) {
        throw std::invalid_argument("invalid density matrix: " + why);
    }
}

CVec bell_state(const BellFamily& family) {
    const double amp = 1.0 / std::numbers::sqrt2;
    const Complex rel = std::polar(amp, family.phase);
    if (family.tag == FamilyTag::Phi) return CVec{amp, 0.0, 0.0, rel};
    return CVec{0.0, amp, rel, 0.0};
}

DensityMatrix pure_density(const CVec& x) {
    if (x.dim() != 4) throw std::invalid_argument("pure_density: expected a 4-vector");
    if (std::abs(x.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("pure_density: vector is not unit norm");
    }
    return DensityMatrix(CMat::outer(x, x));
}

DensityMatrix with_dark_counts(const DensityMatrix& rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("dark count rate must lie in [0, 1]");
    }
    CMat mixed = Complex(1.0 - p) * rho.mat();
    for (int i = 0; i < 4; ++i) mixed(i, i) += p / 4.0;
    return DensityMatrix(mixed);
}

std::vector<BellFamily> phase_sample(FamilyTag tag, int count) {
    if (count < 1) throw std::invalid_argument("phase_sample: count must be >= 1");
    std::vector<BellFamily> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        out.push_back({tag, 2.0 * std::numbers::pi * j / count});
    }
    return out;
}

}  // namespace bellqst

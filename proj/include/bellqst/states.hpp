#pragma once

#include <string>
#include <vector>

#include "bellqst/matcore.hpp"

namespace bellqst {

inline constexpr double kPhysicalityTolerance = 1e-10;

enum class FamilyTag { Phi, Psi };

/// One member of a Bell family: Phi(a) = (|00> + e^{ia}|11>)/sqrt2, Psi(b) = (|01> + e^{ib}|10>)/sqrt2.
struct BellFamily {
    FamilyTag tag = FamilyTag::Phi;
    double phase = 0.0;  // radians in [0, 2pi)
};

const char* family_name(FamilyTag tag);
/// Accepts "phi"/"psi" in any case.
FamilyTag parse_family(const std::string& name);

/// A 4x4 Hermitian, trace-one, positive semi-definite matrix. Construction validates.
class DensityMatrix {
public:
    explicit DensityMatrix(const CMat& mat);

    const CMat& mat() const noexcept { return mat_; }

    /// Returns an empty string when `m` is physical, otherwise the first failing witness.
    static std::string physicality_violation(const CMat& m);

private:
    CMat mat_;
};

CVec bell_state(const BellFamily& family);

DensityMatrix pure_density(const CVec& x);

/// (1 - p) rho + (p / 4) I
DensityMatrix with_dark_counts(const DensityMatrix& rho, double p);

/// `count` members of the family with phases 2 pi j / count.
std::vector<BellFamily> phase_sample(FamilyTag tag, int count);

}  // namespace bellqst

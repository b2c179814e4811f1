#pragma once

#include <array>
#include <string>

#include "bellqst/matcore.hpp"

namespace bellqst {

enum class Polarization { H, V, D, A, L, R };

inline constexpr std::array<Polarization, 6> kPolarizationOrder = {
    Polarization::H, Polarization::V, Polarization::D,
    Polarization::A, Polarization::L, Polarization::R};

char polarization_label(Polarization pol);

/// H=(1,0), V=(0,1), D=(1,1)/sqrt2, A=(1,-1)/sqrt2, R=(1,-i)/sqrt2, L=(1,i)/sqrt2.
CVec pol_ket(Polarization pol);

inline constexpr int kNumMeasurements = 36;

/// The 36 two-photon projectors, first-photon label major, in H,V,D,A,L,R order.
struct MeasurementSet {
    std::array<CMat, kNumMeasurements> operators;
    std::array<CVec, kNumMeasurements> kets;  // operators[k] = |kets[k]><kets[k]|
    std::array<std::string, kNumMeasurements> labels;  // "HH", "HV", ..., "RR"
};

MeasurementSet build_measurement_set();

/// Index of a two-character label such as "DA"; throws on unknown labels.
int measurement_index(const std::string& label);

/// |H><H| (x) |theta><theta| with |theta> = (sin theta, cos theta); theta = 0 projects the
/// second photon onto V.
CMat scan_operator(double theta);

}  // namespace bellqst

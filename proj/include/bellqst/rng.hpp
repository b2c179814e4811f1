#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bellqst {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic random stream identified by a 64-bit key. Child streams are derived by
/// hashing the parent key with a label, so a stream depends only on the path of labels from
/// the master seed and never on which thread or in which order it is consumed.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed);

    std::uint64_t key() const noexcept { return key_; }

    RngStream child(std::uint64_t label) const;
    RngStream child(std::string_view label) const;
    /// Keyed by the bit pattern of `value`, so equal doubles give equal streams.
    RngStream child_for_value(double value) const;

    double normal(double sigma);
    /// One Poisson variate with the given mean, returned as a double.
    double poisson(double mean);
    double uniform(double lo, double hi);

private:
    struct FromKey {};
    RngStream(FromKey, std::uint64_t key);

    std::uint64_t key_;
    std::mt19937_64 engine_;
};

}  // namespace bellqst

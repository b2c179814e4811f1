#include "bellqst/rng.hpp"

#include <bit>

namespace bellqst {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed) : RngStream(FromKey{}, mix64(master_seed)) {}

RngStream::RngStream(FromKey, std::uint64_t key) : key_(key), engine_(key) {}

RngStream RngStream::child(std::uint64_t label) const {
    return RngStream(FromKey{}, mix64(key_ ^ mix64(label ^ 0x6a09e667f3bcc909ULL)));
}

RngStream RngStream::child(std::string_view label) const {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return child(h);
}

RngStream RngStream::child_for_value(double value) const {
    if (value == 0.0) value = 0.0;  // fold -0.0 onto +0.0
    return child(std::bit_cast<std::uint64_t>(value));
}

double RngStream::normal(double sigma) {
    std::normal_distribution<double> dist(0.0, sigma);
    return dist(engine_);
}

double RngStream::poisson(double mean) {
    std::poisson_distribution<long long> dist(mean);
    return static_cast<double>(dist(engine_));
}

double RngStream::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

}  // namespace bellqst

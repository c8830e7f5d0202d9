#pragma once

#include <cstdint>

namespace logitkit {

// Counter-based SplitMix64. A stream is a mixed 64-bit key; the k-th draw of
// a stream is finalize(key + k * GAMMA), so any (stream, counter) cell can be
// sampled independently and in any order. The simulator assigns one stream
// per covariate column (stream id = column index), one for the response
// (stream id = column count), and per-replicate seeds are base_seed XOR r.

namespace rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return finalize(seed + kGamma * (stream_id + 1));
}

inline std::uint64_t at(std::uint64_t stream_key, std::uint64_t counter) {
    return finalize(stream_key + kGamma * counter);
}

/// Uniform draw strictly inside (0, 1): 53 mantissa bits, half-ulp offset.
inline double u01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rng

/// Sequential convenience wrapper over the counter scheme.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key_(rng::derive_stream(seed, stream_id)) {}

    std::uint64_t next_u64() { return rng::at(key_, counter_++); }
    double next_u01() { return rng::u01(next_u64()); }
    /// Uniform in [lo, hi).
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_u01(); }
    double next_normal();  // inverse-CDF transform

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace logitkit

#pragma once

#include <cstdint>

namespace snnsim {

// All randomness in the simulator flows through SplitMix64 (Steele, Lea,
// Flood 2014; public-domain constants). The standard <random> engines are
// avoided on purpose: their distributions are not bit-identical across
// standard library implementations, and every experiment here must be
// reproducible byte-for-byte from a 64-bit seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform in [0,bound). Fixed-point multiply; the O(2^-64) bias is far
    // below anything the statistical tests can see.
    std::uint32_t next_below(std::uint32_t bound)
    {
        return static_cast<std::uint32_t>(
                (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

// Finalizer of SplitMix64, usable as a standalone 64->64 bit mixer.
inline std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream-splitting rule used everywhere a master seed fans out into
// substreams (one per fault map, per image, per redundant execution, ...):
//
//   child = mix64(parent ^ mix64(index + GOLDEN))
//
// The rule is order-free: substream i is the same no matter how many other
// substreams were drawn before it, so sweeps stay reproducible regardless
// of worker count or cell order.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index)
{
    return mix64(parent ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b)
{
    return derive_seed(derive_seed(parent, a), b);
}

// Fixed substream tags. Keeping them in one table makes the seed tree of a
// whole experiment auditable.
namespace stream {
inline constexpr std::uint64_t kWeightInit = 1;
inline constexpr std::uint64_t kTrainEncode = 2;
inline constexpr std::uint64_t kLabelEncode = 3;
inline constexpr std::uint64_t kTestEncode = 4;
inline constexpr std::uint64_t kFaultMap = 5;
inline constexpr std::uint64_t kTmrExec = 6;
inline constexpr std::uint64_t kTraining = 7;
inline constexpr std::uint64_t kDataset = 8;
} // namespace stream

} // namespace snnsim

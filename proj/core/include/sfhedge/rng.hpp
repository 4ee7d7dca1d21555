#ifndef SFHEDGE_RNG_HPP
#define SFHEDGE_RNG_HPP

#include <cstdint>

namespace sfhedge {

/// splitmix64: counter-based generator (Steele, Lea, Flood 2014). State is a
/// plain 64-bit counter advanced by a fixed odd increment; each output is a
/// stateless mix of the counter, so sub-streams derived from (seed, stream)
/// are independent and the whole simulation is reproducible bit-for-bit.
/// The algorithm name is echoed in run reports so results can be replayed
/// by any conforming implementation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Sub-stream b of a master seed; used to make batched sampling
    /// independent of batch scheduling.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_index) {
        SplitMix64 seeder(seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1)));
        return SplitMix64(seeder.next());
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return next() % n;
    }

    static constexpr const char* algorithm_name() { return "splitmix64"; }

private:
    std::uint64_t state_;
};

} // namespace sfhedge

#endif

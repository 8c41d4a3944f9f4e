#pragma once

#include <cstdint>

namespace herald::rng {

// SplitMix64 finalizer. Statistically independent streams come from hashing
// (seed, counter) pairs, so trials can be evaluated in any order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) for stream (seed, counter), order-independent.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ splitmix64(counter));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Small stateful view over one (seed, stream) pair for drawing sequences.
class Stream {
  public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(splitmix64(seed) ^ splitmix64(stream)), counter_(0) {}

    double next_uniform() { return uniform01(seed_, counter_++); }

    // uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(next_uniform() *
                                          static_cast<double>(bound));
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace herald::rng

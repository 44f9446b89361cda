#pragma once

#include <cstdint>

namespace starmod {

/// splitmix64 step, used to expand seeds into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** (Blackman/Vigna reference algorithm). Fixed here so scenario
/// runs reproduce the same samples on any platform or port.
class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform value in [0, n). Plain modulo: bias is irrelevant for test
    /// sampling and the form is trivial to reproduce in other languages.
    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    /// Signed uniform value in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

/// Per-task stream: decorrelates tasks so execution order cannot matter.
inline std::uint64_t derive_stream_seed(std::uint64_t scenario_seed, std::uint64_t stream_index) {
    std::uint64_t sm = scenario_seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
    return splitmix64_next(sm);
}

} // namespace starmod

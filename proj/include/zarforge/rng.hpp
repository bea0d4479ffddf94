#ifndef ZARFORGE_RNG_HPP
#define ZARFORGE_RNG_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace zarforge {

/// Deterministic 64-bit stream: xoshiro256** state, seeded through a
/// splitmix64 expansion of a single 64-bit seed. The draw and shuffle
/// sequences are part of the reproducibility contract; the state layout
/// is not.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
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

    /// Uniform draw in [0, bound). Rejection sampling on the minimal bit
    /// mask covering bound-1, so the sequence is platform independent.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RngStream::next_below: bound must be >= 1");
        const std::uint64_t mask = mask_for(bound - 1);
        for (;;) {
            const std::uint64_t draw = next_u64() & mask;
            if (draw < bound) return draw;
        }
    }

    /// Uniform in [0,1) with 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates from the last index down.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::array<std::uint64_t, 4> state() const { return state_; }
    void set_state(const std::array<std::uint64_t, 4>& s) { state_ = s; }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t mask_for(std::uint64_t max_value) {
        std::uint64_t mask = max_value;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        return mask;
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_ = 0;
};

} // namespace zarforge

#endif

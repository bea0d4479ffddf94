#ifndef ZARFORGE_BINOMIAL_HPP
#define ZARFORGE_BINOMIAL_HPP

#include <cstdint>

namespace zarforge {

/// Exact C(n, k) in 64 bits; each intermediate step divides exactly.
/// Returns 0 for k < 0 or k > n.
inline std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

} // namespace zarforge

#endif

#include "zarforge/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

#include "zarforge/errors.hpp"
#include "zarforge/validator.hpp"

namespace zarforge {

namespace {

// Appendix constructions, stored in the matrix file format.
constexpr const char* kSeed8x23 =
    "8 23\n"
    "00001101101011100110100\n"
    "10110111101001010001001\n"
    "01011110000001001011111\n"
    "10111101000110111000010\n"
    "11001000110001110101010\n"
    "00100001110100001111111\n"
    "01101010011110010100101\n"
    "11010010111110101010000\n";

constexpr const char* kSeed9x22 =
    "9 22\n"
    "1100001100000010011111\n"
    "1111010011010100010011\n"
    "0101110001101000001101\n"
    "0001001100011001111001\n"
    "1000110010000111101001\n"
    "0010011001101101110110\n"
    "0010100110111010100011\n"
    "1111101100110111000100\n"
    "0100100111001001001010\n";

constexpr const char* kSeed11x21 =
    "11 21\n"
    "111111000100100000110\n"
    "100011001011010100011\n"
    "100010100111101011000\n"
    "100101010100011110100\n"
    "101000110010110001111\n"
    "010001011101100011010\n"
    "011000101111011100100\n"
    "010100110001000110111\n"
    "010110101000111010001\n"
    "011011010010001101001\n"
    "001110101100000101010\n";

constexpr const char* kSeed16x15 =
    "16 15\n"
    "111111110000000\n"
    "111100001111000\n"
    "110011001100110\n"
    "110000110011110\n"
    "001111000011110\n"
    "001100111100110\n"
    "000011111111000\n"
    "101010101010101\n"
    "101001010101101\n"
    "100110010110011\n"
    "100101101001011\n"
    "011010011001011\n"
    "011001100110011\n"
    "010110100101101\n"
    "010101011010101\n"
    "000011000000001\n";

constexpr const char* kSeed16x16 =
    "16 16\n"
    "1100100000110101\n"
    "1110010000011011\n"
    "0111001000001101\n"
    "1011100100000110\n"
    "0101110010000011\n"
    "1011111001000001\n"
    "1101011100100000\n"
    "0110111110010000\n"
    "0011010111001000\n"
    "0001101011100100\n"
    "0000110101110010\n"
    "0000011010111001\n"
    "1010001101111100\n"
    "0101000110101110\n"
    "0010100011010111\n"
    "1001000001101011\n";

struct BankSlot {
    int m;
    int n;
    std::int64_t ones;
    const char* text;
};

constexpr BankSlot kBank[] = {
    {8, 23, 94, kSeed8x23},   {9, 22, 97, kSeed9x22},   {11, 21, 111, kSeed11x21},
    {16, 15, 123, kSeed16x15}, {16, 16, 119, kSeed16x16},
};

} // namespace

std::optional<BinaryMatrix> seed_bank(int m, int n) {
    for (const BankSlot& slot : kBank)
        if (slot.m == m && slot.n == n) return parse_matrix(slot.text);
    return std::nullopt;
}

const std::vector<SeedBankEntry>& seed_bank_entries() {
    static const std::vector<SeedBankEntry> entries = [] {
        std::vector<SeedBankEntry> out;
        for (const BankSlot& slot : kBank) out.push_back({slot.m, slot.n, slot.ones});
        return out;
    }();
    return entries;
}

BinaryMatrix circulant_block(int p, const std::vector<int>& shifts) {
    if (p < 1) throw std::invalid_argument("circulant_block: p must be >= 1");
    for (const int d : shifts)
        if (d < 0 || d >= p) throw std::invalid_argument("circulant_block: shift out of range");
    BinaryMatrix out(p, p);
    for (int i = 0; i < p; ++i)
        for (const int d : shifts) out.set(i, (i + d) % p, true);
    return out;
}

BinaryMatrix two_block_circulant(const ShiftSetPair& pair) {
    const BinaryMatrix left = circulant_block(pair.p, pair.d1);
    const BinaryMatrix right = circulant_block(pair.p, pair.d2);
    BinaryMatrix out(pair.p, 2 * pair.p);
    for (int i = 0; i < pair.p; ++i)
        for (int j = 0; j < pair.p; ++j) {
            if (left.get(i, j)) out.set(i, j, true);
            if (right.get(i, j)) out.set(i, pair.p + j, true);
        }
    return out;
}

namespace {

std::uint64_t shift_mask(int p, const std::vector<int>& shifts) {
    std::uint64_t mask = 0;
    for (const int d : shifts) {
        if (d < 0 || d >= p) throw std::invalid_argument("shift set: element out of range");
        mask |= 1ULL << d;
    }
    return mask;
}

inline std::uint64_t rot_mod_p(std::uint64_t mask, int delta, int p) {
    const std::uint64_t full = p == 64 ? ~0ULL : ((1ULL << p) - 1);
    if (delta == 0) return mask & full;
    return ((mask << delta) | (mask >> (p - delta))) & full;
}

// Columns shared by rows {0, deltas...} of a one-block circulant, as a count.
inline int rotated_intersection(std::uint64_t mask, const std::vector<int>& deltas, int p) {
    std::uint64_t acc = mask;
    for (const int d : deltas) acc &= rot_mod_p(mask, d, p);
    return std::popcount(acc);
}

// All (s-1)-subsets of [1, p) in lexicographic order.
std::vector<std::vector<int>> delta_combinations(int p, int s) {
    std::vector<std::vector<int>> combos;
    const int need = s - 1;
    if (need == 0) {
        combos.push_back({});
        return combos;
    }
    if (p - 1 < need) return combos;
    std::vector<int> cur(need);
    for (int i = 0; i < need; ++i) cur[i] = i + 1;
    for (;;) {
        combos.push_back(cur);
        int pos = need - 1;
        while (pos >= 0 && cur[pos] == p - 1 - (need - 1 - pos)) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int q = pos + 1; q < need; ++q) cur[q] = cur[q - 1] + 1;
    }
    return combos;
}

std::vector<int> mask_to_set(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

} // namespace

bool circulant_pair_valid(const ShiftSetPair& pair, int s, int t) {
    if (pair.p > 64) { // fall back to the assembled matrix for oversized moduli
        return is_valid(two_block_circulant(pair), ZarParams(pair.p, 2 * pair.p, s, t));
    }
    const std::uint64_t m1 = shift_mask(pair.p, pair.d1);
    const std::uint64_t m2 = shift_mask(pair.p, pair.d2);
    for (const std::vector<int>& deltas : delta_combinations(pair.p, s)) {
        const int common =
            rotated_intersection(m1, deltas, pair.p) + rotated_intersection(m2, deltas, pair.p);
        if (common > t - 1) return false;
    }
    return true;
}

CirculantBest enumerate_two_block_circulant(int p, int s, int t) {
    if (p < 1) throw std::invalid_argument("enumerate_two_block_circulant: p must be >= 1");
    if (p > 13) throw GuardError("enumerate_two_block_circulant: p > 13 exceeds the search guard");
    if (s < 1 || t < 1) throw std::invalid_argument("enumerate_two_block_circulant: bad (s,t)");

    const std::vector<std::vector<int>> combos = delta_combinations(p, s);
    const std::size_t n_combos = combos.size();
    const std::uint64_t top = 1ULL << p;

    // Per-mask rotated-intersection profile; masks whose own profile already
    // breaks the bound can never appear in a valid pair.
    std::vector<std::vector<std::uint8_t>> profile(top);
    std::vector<char> alone_ok(top, 0);
    for (std::uint64_t mask = 0; mask < top; ++mask) {
        std::vector<std::uint8_t> prof(n_combos);
        bool ok = true;
        for (std::size_t k = 0; k < n_combos; ++k) {
            const int c = rotated_intersection(mask, combos[k], p);
            prof[k] = static_cast<std::uint8_t>(c);
            if (c > t - 1) ok = false;
        }
        if (ok) {
            profile[mask] = std::move(prof);
            alone_ok[mask] = 1;
        }
    }

    // Usable masks grouped by popcount; d1 candidates are rotation-normalized
    // to contain element 0 (the empty set stands alone).
    std::vector<std::vector<std::uint64_t>> by_size(p + 1), by_size_d1(p + 1);
    for (std::uint64_t mask = 0; mask < top; ++mask) {
        if (!alone_ok[mask]) continue;
        const int size = std::popcount(mask);
        by_size[size].push_back(mask);
        if (mask == 0 || (mask & 1)) by_size_d1[size].push_back(mask);
    }

    auto compatible = [&](std::uint64_t a, std::uint64_t b) {
        const std::vector<std::uint8_t>& pa = profile[a];
        const std::vector<std::uint8_t>& pb = profile[b];
        for (std::size_t k = 0; k < n_combos; ++k)
            if (pa[k] + pb[k] > t - 1) return false;
        return true;
    };

    // Pass 1: maximum total, scanning size classes in descending order with
    // the (|d1|+|d2|)*p <= best prune.
    std::int64_t best_total = -1;
    for (int size1 = p; size1 >= 0; --size1) {
        if (static_cast<std::int64_t>(size1 + p) * p <= best_total) break;
        for (int size2 = p; size2 >= 0; --size2) {
            const std::int64_t total = static_cast<std::int64_t>(size1 + size2) * p;
            if (total <= best_total) break;
            bool found = false;
            for (const std::uint64_t d1 : by_size_d1[size1]) {
                for (const std::uint64_t d2 : by_size[size2]) {
                    if (compatible(d1, d2)) {
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) best_total = total;
        }
    }

    // Pass 2: canonical winner for that total, smallest sizes then sets.
    const std::int64_t sum = best_total / p;
    for (int size1 = std::max<std::int64_t>(0, sum - p); size1 <= std::min<std::int64_t>(p, sum);
         ++size1) {
        const int size2 = static_cast<int>(sum) - size1;
        // Lexicographic set order within a size class.
        auto lex_sorted = [](std::vector<std::uint64_t> masks) {
            std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
                return mask_to_set(a) < mask_to_set(b);
            });
            return masks;
        };
        for (const std::uint64_t d1 : lex_sorted(by_size_d1[size1])) {
            for (const std::uint64_t d2 : lex_sorted(by_size[size2])) {
                if (compatible(d1, d2)) {
                    CirculantBest best;
                    best.pair = ShiftSetPair{p, mask_to_set(d1), mask_to_set(d2)};
                    best.ones = best_total;
                    return best;
                }
            }
        }
    }
    // Unreachable: the empty pair is always valid.
    throw std::logic_error("enumerate_two_block_circulant: no valid pair found");
}

BinaryMatrix greedy_fill(const BinaryMatrix& m, const ZarParams& params, const FillPolicy& policy,
                         RngStream* rng) {
    if (auto witness = find_witness(m, params))
        throw ValidationError("greedy_fill: input matrix is not valid", *witness);

    BinaryMatrix out = m;
    auto try_add = [&](int i, int j) {
        if (!out.get(i, j) && can_add(out, i, j, params)) out.set(i, j, true);
    };

    switch (policy.order) {
    case FillOrder::RowMajor:
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) try_add(i, j);
        break;
    case FillOrder::ReverseRowMajor:
        for (int i = out.rows() - 1; i >= 0; --i)
            for (int j = out.cols() - 1; j >= 0; --j) try_add(i, j);
        break;
    case FillOrder::Shuffled: {
        std::vector<std::pair<int, int>> order;
        order.reserve(static_cast<std::size_t>(out.rows()) * out.cols());
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) order.emplace_back(i, j);
        RngStream local(policy.seed);
        RngStream& stream = rng ? *rng : local;
        stream.shuffle(order);
        for (const auto& [i, j] : order) try_add(i, j);
        break;
    }
    case FillOrder::SparsestRowFirst: {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::tuple<int, int, int>> cells; // (row degree at pass start, i, j)
            for (int i = 0; i < out.rows(); ++i) {
                const int deg = out.row_ones(i);
                for (int j = 0; j < out.cols(); ++j)
                    if (!out.get(i, j)) cells.emplace_back(deg, i, j);
            }
            std::sort(cells.begin(), cells.end());
            for (const auto& [deg, i, j] : cells) {
                if (!out.get(i, j) && can_add(out, i, j, params)) {
                    out.set(i, j, true);
                    changed = true;
                }
            }
        }
        break;
    }
    }
    return out;
}

BinaryMatrix build_12_22() {
    // Quadratic residues mod 11 and their complement.
    const ShiftSetPair pair{11, {1, 3, 4, 5, 9}, {0, 2, 6, 7, 8, 10}};
    const ZarParams params(12, 22, 3, 3);

    BinaryMatrix g(12, 22);
    const BinaryMatrix blocks = two_block_circulant(pair);
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 22; ++j)
            if (blocks.get(i, j)) g.set(i, j, true);

    // Each pass tests tentative cells with the full validator.
    auto try_full = [&](int i, int j) {
        if (g.get(i, j)) return;
        g.set(i, j, true);
        if (!is_valid(g, params)) g.set(i, j, false);
    };

    for (int j = 0; j < 22; ++j) try_full(11, j);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 22; ++j) try_full(i, j);
    for (int i = 11; i >= 0; --i)
        for (int j = 21; j >= 0; --j) try_full(i, j);
    return g;
}

} // namespace zarforge

#ifndef ZARFORGE_CONSTRUCTIONS_HPP
#define ZARFORGE_CONSTRUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zarforge/matrix.hpp"
#include "zarforge/rng.hpp"

namespace zarforge {

/// Two subsets of Z_p defining a p x 2p two-block circulant construction.
/// The assembled matrix has (|d1| + |d2|) * p ones.
struct ShiftSetPair {
    int p = 1;
    std::vector<int> d1;
    std::vector<int> d2;
};

enum class FillOrder { RowMajor, ReverseRowMajor, Shuffled, SparsestRowFirst };

struct FillPolicy {
    FillOrder order = FillOrder::RowMajor;
    std::uint64_t seed = 0; // consumed by Shuffled when no external stream is given

    static FillPolicy row_major() { return {FillOrder::RowMajor, 0}; }
    static FillPolicy reverse_row_major() { return {FillOrder::ReverseRowMajor, 0}; }
    static FillPolicy shuffled(std::uint64_t seed) { return {FillOrder::Shuffled, seed}; }
    static FillPolicy sparsest_row_first() { return {FillOrder::SparsestRowFirst, 0}; }
};

struct SeedBankEntry {
    int m;
    int n;
    std::int64_t ones;
};

/// Known-good starting matrices, keyed by shape:
/// (8,23) 94, (9,22) 97, (11,21) 111, (16,15) 123, (16,16) 119.
std::optional<BinaryMatrix> seed_bank(int m, int n);
const std::vector<SeedBankEntry>& seed_bank_entries();

/// p x p matrix with entry (i,j) = 1 iff (j - i) mod p is in the shift set.
BinaryMatrix circulant_block(int p, const std::vector<int>& shifts);

/// p x 2p matrix: columns [0,p) from the d1 circulant, [p,2p) from d2.
BinaryMatrix two_block_circulant(const ShiftSetPair& pair);

/// Shift-arithmetic validity test, equal to is_valid of the assembled matrix:
/// for every choice of s-1 distinct deltas, the two blocks' rotated
/// self-intersections must total at most t-1 columns.
bool circulant_pair_valid(const ShiftSetPair& pair, int s = 3, int t = 3);

struct CirculantBest {
    ShiftSetPair pair;
    std::int64_t ones = 0;
};

/// Exhausts all valid shift-set pairs (d1 normalized to contain 0 by
/// rotation) and returns one maximizing (|d1|+|d2|)*p, tie-broken by
/// lexicographically smallest sizes then sets. Guard: p <= 13.
CirculantBest enumerate_two_block_circulant(int p, int s, int t);

/// Grows a valid matrix to maximality: after the fill no zero cell passes
/// can_add. Sparsest-row-first rescans until a full pass adds nothing;
/// the other orders need a single pass. An external stream, when given,
/// overrides the policy seed for the shuffled order.
BinaryMatrix greedy_fill(const BinaryMatrix& m, const ZarParams& params, const FillPolicy& policy,
                         RngStream* rng = nullptr);

/// Deterministic 12x22 pipeline: quadratic-residue circulant pair on the
/// first 11 rows, left-to-right fill of row 11, then a row-major and a
/// reverse greedy pass, each guarded by the full validator. Yields a valid
/// matrix with 132 ones.
BinaryMatrix build_12_22();

} // namespace zarforge

#endif

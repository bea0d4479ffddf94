#ifndef ZARFORGE_MATRIX_HPP
#define ZARFORGE_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zarforge/errors.hpp"

namespace zarforge {

/// Problem instance: maximize ones in an m x n 0/1 matrix with no all-ones
/// s x t submatrix. s > m (or t > n) is legal and makes the constraint vacuous.
struct ZarParams {
    int m = 1;
    int n = 1;
    int s = 1;
    int t = 1;

    ZarParams() = default;
    ZarParams(int m_, int n_, int s_, int t_) : m(m_), n(n_), s(s_), t(t_) {
        if (m < 1 || n < 1 || s < 1 || t < 1)
            throw std::invalid_argument("ZarParams: all fields must be strictly positive");
    }

    bool operator==(const ZarParams&) const = default;

    /// Dual instance: transposing a matrix swaps (m,s) with (n,t).
    ZarParams dual() const { return ZarParams(n, m, t, s); }
};

/// Dense 0/1 matrix stored as one column-support bitset per row
/// (64-bit words, unused tail bits kept zero so popcounts are exact).
/// Value semantics; search loops mutate their own scratch copies.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int words_per_row() const { return words_; }

    bool get(int i, int j) const {
        return (bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    void set(int i, int j, bool value) {
        std::uint64_t& w = bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)];
        const std::uint64_t bit = 1ULL << (j & 63);
        if (value)
            w |= bit;
        else
            w &= ~bit;
    }

    const std::uint64_t* row(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }
    std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

    int row_ones(int i) const;
    std::int64_t count_ones() const;

    bool operator==(const BinaryMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// All-zero matrix of the instance's shape.
BinaryMatrix new_matrix(const ZarParams& params);

std::int64_t count_ones(const BinaryMatrix& m);

BinaryMatrix transpose(const BinaryMatrix& m);

/// Entry (i,j) of the result is entry (row_perm[i], col_perm[j]) of the input.
/// Throws std::invalid_argument when a permutation length does not match.
BinaryMatrix permute(const BinaryMatrix& m,
                     const std::vector<int>& row_perm,
                     const std::vector<int>& col_perm);

/// Optional metadata carried on line 2 of a matrix file: "# s t claim".
struct MatrixClaim {
    int s = 0;
    int t = 0;
    std::int64_t lower_bound_claim = 0;
};

struct MatrixFile {
    BinaryMatrix matrix;
    std::optional<MatrixClaim> claim;
};

/// Matrix file format (text, UTF-8, LF):
///   line 1: "m n"
///   line 2 (optional): "# s t lower_bound_claim"
///   then m lines of exactly n characters from {0,1}.
MatrixFile parse_matrix_file(const std::string& text);
BinaryMatrix parse_matrix(const std::string& text);

std::string serialize_matrix(const BinaryMatrix& m);
std::string serialize_matrix(const BinaryMatrix& m, const MatrixClaim& claim);

} // namespace zarforge

#endif

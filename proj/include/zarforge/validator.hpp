#ifndef ZARFORGE_VALIDATOR_HPP
#define ZARFORGE_VALIDATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zarforge/matrix.hpp"

namespace zarforge {

/// One concrete all-ones s x t submatrix.
struct Witness {
    std::vector<int> rows;
    std::vector<int> cols;
};

struct ViolationReport {
    std::uint64_t total_submatrices = 0; // number of all-ones s x t submatrices
    std::uint64_t excess = 0;            // sum over s-row subsets of max(0, common - (t-1))
    std::optional<Witness> witness;
};

/// A matrix failed validation where the contract requires a valid one.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what, Witness w)
        : std::runtime_error(what), witness(std::move(w)) {}
    Witness witness;
};

/// Columns where every listed row has a 1. Throws on an empty row set.
std::vector<int> common_support(const BinaryMatrix& m, const std::vector<int>& rows);

/// True iff no s-row subset has a common support of size >= t.
/// Vacuously true when s > rows or t > cols.
bool is_valid(const BinaryMatrix& m, const ZarParams& params);

/// Sum over s-row subsets R of C(|common_support(R)|, t).
std::uint64_t count_violating_submatrices(const BinaryMatrix& m, const ZarParams& params);

/// Sum over s-row subsets of max(0, |common_support| - (t-1)).
std::uint64_t excess_violations(const BinaryMatrix& m, const ZarParams& params);

ViolationReport violation_report(const BinaryMatrix& m, const ZarParams& params);

/// Absent iff the matrix is valid; otherwise one concrete violation.
std::optional<Witness> find_witness(const BinaryMatrix& m, const ZarParams& params);

/// Incremental query: given a valid matrix with a 0 at (i,j), would setting
/// that cell keep it valid? Only (s-1)-subsets of the other rows with a 1 in
/// column j need checking, against row i's support including j.
/// Throws std::logic_error when the cell is already 1. Behavior on invalid
/// base matrices is unspecified.
bool can_add(const BinaryMatrix& m, int i, int j, const ZarParams& params);

/// Cumulative count of column positions examined by validator intersections
/// on this thread. Used by the search harness to budget genome evaluations.
std::uint64_t validator_cell_checks();

} // namespace zarforge

#endif

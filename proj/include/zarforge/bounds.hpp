#ifndef ZARFORGE_BOUNDS_HPP
#define ZARFORGE_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zarforge/matrix.hpp"

namespace zarforge {

struct BoundsRecord {
    ZarParams params;
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    bool tight = false;
    std::string provenance;
};

/// Dual-degree counting bound (t-1)*C(m,s)/C(k,s-1) + (k+1)(s-1)*n/s,
/// evaluated as an exact rational and reported as a double.
/// Throws when C(k, s-1) = 0.
double roman_upper_bound(const ZarParams& params, int k);

/// Floor of the minimum of roman_upper_bound over k in [s-1, m].
std::int64_t best_roman(const ZarParams& params);

/// Records a verified construction: raises the lower bound when the matrix
/// is valid and beats it, and marks the record tight when lower = upper.
/// Invalid matrices are rejected with a ValidationError carrying a witness.
BoundsRecord certify(const BoundsRecord& record, const BinaryMatrix& m);

/// Exact value by exhaustive search. Guard: m*n <= 20.
std::int64_t brute_force_exact(const ZarParams& params);

/// The registry values this project ships: the three proven-tight cases and
/// the seed-bank ones counts as lower bounds.
std::vector<BoundsRecord> builtin_registry();

/// CSV registry, header "m,n,s,t,lower,upper,provenance"; empty fields for
/// absent bounds; provenance runs to end of line.
std::vector<BoundsRecord> load_bounds_csv(const std::string& text);
std::string save_bounds_csv(const std::vector<BoundsRecord>& records);

} // namespace zarforge

#endif

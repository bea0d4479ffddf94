#ifndef ZARFORGE_SCORING_HPP
#define ZARFORGE_SCORING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "zarforge/matrix.hpp"

namespace zarforge {

/// Best valid ones count observed so far in a run. Monotone; only advanced
/// by matrices that pass validation.
struct SotaTracker {
    std::int64_t n_sota = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> history; // (iteration, value)
};

struct CandidateScore {
    double s1 = 0.0; // primary-matrix reward; -1 exactly when the primary was invalid
    double s2 = 0.0; // prospect reward in [0, 1/2]
    double total = 0.0;
};

/// Density-based expectation C(m,s) * C(n,t) * (c / (m*n))^(s*t).
double expected_violations(const ZarParams& params, std::int64_t c);

/// Invalid matrix -> -1. Otherwise c1 ones scale by 4 when beating the
/// tracker, by 2 when matching it, by 1 below it.
double score_primary(const BinaryMatrix& m1, const ZarParams& params, const SotaTracker& tracker);

/// (1/2) * max(0, 1 - violations / expected). A zero expectation (only at
/// c = 0) yields 1/2 for a violation-free matrix and 0 otherwise.
double score_prospect(const BinaryMatrix& m2, const ZarParams& params);

/// Scores a (primary, prospect) pair against the tracker without mutating it.
CandidateScore score_candidate(const BinaryMatrix& m1, const BinaryMatrix& m2,
                               const ZarParams& params, const SotaTracker& tracker);

/// Records the matrix's ones count when it is valid and beats the tracker;
/// otherwise returns the tracker unchanged.
SotaTracker update_sota(const SotaTracker& tracker, const BinaryMatrix& m,
                        const ZarParams& params, std::int64_t iteration = -1);

} // namespace zarforge

#endif

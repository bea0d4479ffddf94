#include "zarforge/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "zarforge/binomial.hpp"
#include "zarforge/validator.hpp"

namespace zarforge {

double expected_violations(const ZarParams& params, std::int64_t c) {
    const double windows = static_cast<double>(binom(params.m, params.s)) *
                           static_cast<double>(binom(params.n, params.t));
    const double density = static_cast<double>(c) /
                           (static_cast<double>(params.m) * static_cast<double>(params.n));
    return windows * std::pow(density, static_cast<double>(params.s) * params.t);
}

double score_primary(const BinaryMatrix& m1, const ZarParams& params, const SotaTracker& tracker) {
    if (!is_valid(m1, params)) return -1.0;
    const std::int64_t c1 = count_ones(m1);
    if (c1 > tracker.n_sota) return 4.0 * static_cast<double>(c1);
    if (c1 == tracker.n_sota) return 2.0 * static_cast<double>(c1);
    return static_cast<double>(c1);
}

double score_prospect(const BinaryMatrix& m2, const ZarParams& params) {
    const std::uint64_t violations = count_violating_submatrices(m2, params);
    const double expected = expected_violations(params, count_ones(m2));
    if (expected == 0.0) return violations == 0 ? 0.5 : 0.0;
    return 0.5 * std::max(0.0, 1.0 - static_cast<double>(violations) / expected);
}

CandidateScore score_candidate(const BinaryMatrix& m1, const BinaryMatrix& m2,
                               const ZarParams& params, const SotaTracker& tracker) {
    CandidateScore score;
    score.s1 = score_primary(m1, params, tracker);
    score.s2 = score_prospect(m2, params);
    score.total = score.s1 + score.s2;
    return score;
}

SotaTracker update_sota(const SotaTracker& tracker, const BinaryMatrix& m,
                        const ZarParams& params, std::int64_t iteration) {
    const std::int64_t c = count_ones(m);
    if (c <= tracker.n_sota || !is_valid(m, params)) return tracker;
    SotaTracker next = tracker;
    next.n_sota = c;
    next.history.emplace_back(iteration, c);
    return next;
}

} // namespace zarforge

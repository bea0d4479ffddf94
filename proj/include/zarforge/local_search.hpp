#ifndef ZARFORGE_LOCAL_SEARCH_HPP
#define ZARFORGE_LOCAL_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "zarforge/constructions.hpp"
#include "zarforge/matrix.hpp"
#include "zarforge/rng.hpp"

namespace zarforge {

struct RipupConfig {
    int restarts = 300;
    int k_min = 3; // ones removed per restart, drawn uniformly in [k_min, k_max]
    int k_max = 12;
    int improve_iters = 200; // max improvement sweeps per restart
    std::optional<std::int64_t> target; // early exit once this many ones are reached
    std::uint64_t seed = 0;
    FillPolicy fill_policy = FillPolicy::shuffled(0);
};

struct SearchResult {
    BinaryMatrix best;
    std::int64_t best_ones = 0;
    int restarts_used = 0;
    bool hit_target = false;
};

/// Clears k uniformly chosen ones. The result of ripping up a valid matrix
/// stays valid. Throws when k exceeds the ones count.
BinaryMatrix ripup(const BinaryMatrix& m, int k, RngStream& rng);

/// One improvement sweep: for each 1-cell in shuffled order, clear it and
/// try to place two new ones elsewhere (keeping the exchange only when both
/// land), then run a row-major greedy pass. Net ones never decrease.
/// Returns the new matrix and whether any exchange succeeded.
std::pair<BinaryMatrix, bool> one_out_two_in_sweep(const BinaryMatrix& m, const ZarParams& params,
                                                   RngStream& rng);

/// Plateau-accepting move filter: candidate >= current.
bool accept_rule_sa(std::int64_t current_ones, std::int64_t candidate_ones);

/// Restart loop: each restart derives its stream from the config seed plus
/// the appendix offset convention (53*restart + 17), rips up, refills with
/// the configured policy, then sweeps until stagnation. Tracks the global
/// best (earliest restart wins ties) and stops early on target.
/// Degenerate instances (m < s or n < t) return the all-ones matrix.
SearchResult ripup_repair_search(const BinaryMatrix& seed_matrix, const ZarParams& params,
                                 const RipupConfig& config);

} // namespace zarforge

#endif

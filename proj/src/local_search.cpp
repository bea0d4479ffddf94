#include "zarforge/local_search.hpp"

#include <stdexcept>

#include "zarforge/validator.hpp"

namespace zarforge {

namespace {

std::vector<std::pair<int, int>> list_cells(const BinaryMatrix& m, bool value) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(i, j) == value) cells.emplace_back(i, j);
    return cells;
}

} // namespace

BinaryMatrix ripup(const BinaryMatrix& m, int k, RngStream& rng) {
    std::vector<std::pair<int, int>> ones = list_cells(m, true);
    if (k < 0 || static_cast<std::size_t>(k) > ones.size())
        throw std::invalid_argument("ripup: k exceeds the ones count");
    rng.shuffle(ones);
    BinaryMatrix out = m;
    for (int idx = 0; idx < k; ++idx) out.set(ones[idx].first, ones[idx].second, false);
    return out;
}

std::pair<BinaryMatrix, bool> one_out_two_in_sweep(const BinaryMatrix& m, const ZarParams& params,
                                                   RngStream& rng) {
    BinaryMatrix g = m;
    bool improved = false;

    std::vector<std::pair<int, int>> ones = list_cells(g, true);
    rng.shuffle(ones);
    for (const auto& [oi, oj] : ones) {
        g.set(oi, oj, false);
        std::vector<std::pair<int, int>> zeros = list_cells(g, false);
        rng.shuffle(zeros);
        std::vector<std::pair<int, int>> added;
        for (const auto& [ni, nj] : zeros) {
            if (can_add(g, ni, nj, params)) {
                g.set(ni, nj, true);
                added.emplace_back(ni, nj);
                if (added.size() >= 2) break;
            }
        }
        if (added.size() >= 2) {
            improved = true;
        } else {
            for (const auto& [ai, aj] : added) g.set(ai, aj, false);
            g.set(oi, oj, true);
        }
    }

    // Trailing greedy pass.
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!g.get(i, j) && can_add(g, i, j, params)) g.set(i, j, true);

    return {std::move(g), improved};
}

bool accept_rule_sa(std::int64_t current_ones, std::int64_t candidate_ones) {
    return candidate_ones >= current_ones;
}

SearchResult ripup_repair_search(const BinaryMatrix& seed_matrix, const ZarParams& params,
                                 const RipupConfig& config) {
    if (config.k_min < 1 || config.k_min > config.k_max)
        throw std::invalid_argument("ripup_repair_search: need 1 <= k_min <= k_max");
    if (config.improve_iters < 0)
        throw std::invalid_argument("ripup_repair_search: improve_iters must be >= 0");

    SearchResult result;

    // Vacuous constraint: nothing beats the full matrix.
    if (params.m < params.s || params.n < params.t) {
        BinaryMatrix full(params.m, params.n);
        for (int i = 0; i < params.m; ++i)
            for (int j = 0; j < params.n; ++j) full.set(i, j, true);
        result.best_ones = full.count_ones();
        result.best = std::move(full);
        result.hit_target = config.target && result.best_ones >= *config.target;
        return result;
    }

    if (!is_valid(seed_matrix, params))
        throw std::invalid_argument("ripup_repair_search: seed matrix is not valid");

    result.best = seed_matrix;
    result.best_ones = seed_matrix.count_ones();
    if (config.target && result.best_ones >= *config.target) {
        result.hit_target = true;
        return result;
    }

    for (int restart = 0; restart < config.restarts; ++restart) {
        RngStream rng(config.seed + 53ULL * static_cast<std::uint64_t>(restart) + 17ULL);

        const std::int64_t span = config.k_max - config.k_min + 1;
        int k = config.k_min + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span)));
        const std::int64_t seed_ones = seed_matrix.count_ones();
        if (k > seed_ones) k = static_cast<int>(seed_ones);

        BinaryMatrix g = ripup(seed_matrix, k, rng);
        g = greedy_fill(g, params, config.fill_policy, &rng);

        for (int sweep = 0; sweep < config.improve_iters; ++sweep) {
            auto [next, improved] = one_out_two_in_sweep(g, params, rng);
            g = std::move(next);
            if (!improved) break;
        }

        result.restarts_used = restart + 1;
        const std::int64_t ones = g.count_ones();
        if (ones > result.best_ones && is_valid(g, params)) {
            result.best_ones = ones;
            result.best = std::move(g);
        }
        if (config.target && result.best_ones >= *config.target) {
            result.hit_target = true;
            break;
        }
    }
    return result;
}

} // namespace zarforge

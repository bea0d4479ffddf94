#include "zarforge/validator.hpp"

#include <algorithm>
#include <bit>

#include "zarforge/binomial.hpp"

namespace zarforge {

namespace {

thread_local std::uint64_t g_cell_checks = 0;

inline void charge(int cols) { g_cell_checks += static_cast<std::uint64_t>(cols); }

inline int popcount_words(const std::uint64_t* w, int words) {
    int acc = 0;
    for (int k = 0; k < words; ++k) acc += std::popcount(w[k]);
    return acc;
}

inline void and_into(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, int words) {
    for (int k = 0; k < words; ++k) out[k] = a[k] & b[k];
}

inline int and_popcount(const std::uint64_t* a, const std::uint64_t* b, int words) {
    int acc = 0;
    for (int k = 0; k < words; ++k) acc += std::popcount(a[k] & b[k]);
    return acc;
}

inline int and3_popcount(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* c,
                         int words) {
    int acc = 0;
    for (int k = 0; k < words; ++k) acc += std::popcount(a[k] & b[k] & c[k]);
    return acc;
}

std::vector<int> mask_columns(const std::uint64_t* mask, int words, int limit) {
    std::vector<int> cols;
    for (int w = 0; w < words && static_cast<int>(cols.size()) < limit; ++w) {
        std::uint64_t x = mask[w];
        while (x && static_cast<int>(cols.size()) < limit) {
            cols.push_back(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return cols;
}

// General-s reference path: ordered row combinations with an incremental
// intersection stack, pruning once the partial common support drops below t.
template <typename Visit>
bool enum_general(const BinaryMatrix& m, int s, int t, int start, int depth,
                  std::vector<int>& chosen, std::vector<std::uint64_t>& inter, Visit& visit) {
    const int words = m.words_per_row();
    for (int r = start; r <= m.rows() - (s - depth); ++r) {
        std::uint64_t* cur = inter.data() + static_cast<std::size_t>(depth) * words;
        charge(m.cols());
        if (depth == 0) {
            std::copy(m.row(r), m.row(r) + words, cur);
        } else {
            and_into(inter.data() + static_cast<std::size_t>(depth - 1) * words, m.row(r), cur,
                     words);
        }
        const int pc = popcount_words(cur, words);
        if (pc < t) continue;
        chosen[depth] = r;
        if (depth + 1 == s) {
            if (!visit(chosen, cur, pc)) return false;
        } else {
            if (!enum_general(m, s, t, r + 1, depth + 1, chosen, inter, visit)) return false;
        }
    }
    return true;
}

// Visits every s-row subset whose common support still has >= t columns.
// visit(rows, mask_words, popcount) -> false stops the enumeration early.
// s == 3 takes the dedicated three-row bitset path (hot loop).
template <typename Visit>
bool enumerate_offending(const BinaryMatrix& m, const ZarParams& p, Visit&& visit) {
    const int rows = m.rows();
    const int words = m.words_per_row();
    if (p.s > rows || p.t > m.cols()) return true;

    if (p.s == 3) {
        std::vector<std::uint64_t> pair(words), triple(words);
        std::vector<int> chosen(3);
        for (int i = 0; i < rows - 2; ++i) {
            const std::uint64_t* ri = m.row(i);
            for (int j = i + 1; j < rows - 1; ++j) {
                charge(m.cols());
                and_into(ri, m.row(j), pair.data(), words);
                if (popcount_words(pair.data(), words) < p.t) continue;
                for (int k = j + 1; k < rows; ++k) {
                    charge(m.cols());
                    and_into(pair.data(), m.row(k), triple.data(), words);
                    const int pc = popcount_words(triple.data(), words);
                    if (pc < p.t) continue;
                    chosen[0] = i;
                    chosen[1] = j;
                    chosen[2] = k;
                    if (!visit(chosen, triple.data(), pc)) return false;
                }
            }
        }
        return true;
    }

    std::vector<int> chosen(p.s);
    std::vector<std::uint64_t> inter(static_cast<std::size_t>(p.s) * words);
    return enum_general(m, p.s, p.t, 0, 0, chosen, inter, visit);
}

void check_dims(const BinaryMatrix& m, const ZarParams& p, const char* where) {
    if (m.rows() != p.m || m.cols() != p.n)
        throw std::invalid_argument(std::string(where) + ": matrix dims do not match params");
}

} // namespace

std::vector<int> common_support(const BinaryMatrix& m, const std::vector<int>& rows) {
    if (rows.empty()) throw std::invalid_argument("common_support: empty row set");
    const int words = m.words_per_row();
    for (const int r : rows)
        if (r < 0 || r >= m.rows()) throw std::out_of_range("common_support: row index out of range");
    std::vector<std::uint64_t> mask(m.row(rows[0]), m.row(rows[0]) + words);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        charge(m.cols());
        and_into(mask.data(), m.row(rows[k]), mask.data(), words);
    }
    return mask_columns(mask.data(), words, m.cols());
}

bool is_valid(const BinaryMatrix& m, const ZarParams& params) {
    check_dims(m, params, "is_valid");
    return enumerate_offending(m, params, [](const std::vector<int>&, const std::uint64_t*, int) {
        return false; // any offending subset proves invalidity
    });
}

std::uint64_t count_violating_submatrices(const BinaryMatrix& m, const ZarParams& params) {
    check_dims(m, params, "count_violating_submatrices");
    std::uint64_t total = 0;
    enumerate_offending(m, params,
                        [&](const std::vector<int>&, const std::uint64_t*, int pc) {
                            total += binom(pc, params.t);
                            return true;
                        });
    return total;
}

std::uint64_t excess_violations(const BinaryMatrix& m, const ZarParams& params) {
    check_dims(m, params, "excess_violations");
    std::uint64_t total = 0;
    enumerate_offending(m, params,
                        [&](const std::vector<int>&, const std::uint64_t*, int pc) {
                            total += static_cast<std::uint64_t>(pc - (params.t - 1));
                            return true;
                        });
    return total;
}

ViolationReport violation_report(const BinaryMatrix& m, const ZarParams& params) {
    check_dims(m, params, "violation_report");
    ViolationReport report;
    enumerate_offending(m, params,
                        [&](const std::vector<int>& rows, const std::uint64_t* mask, int pc) {
                            report.total_submatrices += binom(pc, params.t);
                            report.excess += static_cast<std::uint64_t>(pc - (params.t - 1));
                            if (!report.witness)
                                report.witness = Witness{
                                    rows, mask_columns(mask, m.words_per_row(), params.t)};
                            return true;
                        });
    return report;
}

std::optional<Witness> find_witness(const BinaryMatrix& m, const ZarParams& params) {
    check_dims(m, params, "find_witness");
    std::optional<Witness> witness;
    enumerate_offending(m, params,
                        [&](const std::vector<int>& rows, const std::uint64_t* mask, int) {
                            witness = Witness{rows, mask_columns(mask, m.words_per_row(), params.t)};
                            return false;
                        });
    return witness;
}

bool can_add(const BinaryMatrix& m, int i, int j, const ZarParams& params) {
    check_dims(m, params, "can_add");
    if (m.get(i, j)) throw std::logic_error("can_add: cell is already 1");
    const int words = m.words_per_row();
    if (params.s > m.rows() || params.t > m.cols()) return true;

    // Row i's support with column j switched on.
    std::vector<std::uint64_t> base(m.row(i), m.row(i) + words);
    base[j >> 6] |= 1ULL << (j & 63);

    if (params.s == 1) return popcount_words(base.data(), words) < params.t;

    std::vector<int> others;
    others.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        if (r != i && m.get(r, j)) others.push_back(r);
    if (static_cast<int>(others.size()) < params.s - 1) return true;

    if (params.s == 3) {
        for (std::size_t a = 0; a + 1 < others.size(); ++a) {
            for (std::size_t b = a + 1; b < others.size(); ++b) {
                charge(m.cols());
                if (and3_popcount(base.data(), m.row(others[a]), m.row(others[b]), words) >=
                    params.t)
                    return false;
            }
        }
        return true;
    }

    // General path: (s-1)-subsets of the candidate rows, pruned incrementally.
    const int need = params.s - 1;
    std::vector<std::uint64_t> inter(static_cast<std::size_t>(need) * words);
    std::vector<std::size_t> pick(need);
    auto recurse = [&](auto&& self, std::size_t start, int depth) -> bool {
        for (std::size_t k = start; k + (need - depth - 1) < others.size(); ++k) {
            std::uint64_t* cur = inter.data() + static_cast<std::size_t>(depth) * words;
            const std::uint64_t* prev =
                depth == 0 ? base.data() : inter.data() + static_cast<std::size_t>(depth - 1) * words;
            charge(m.cols());
            and_into(prev, m.row(others[k]), cur, words);
            if (popcount_words(cur, words) < params.t) continue;
            if (depth + 1 == need) return false; // full subset reaches t common columns
            if (!self(self, k + 1, depth + 1)) return false;
        }
        return true;
    };
    return recurse(recurse, 0, 0);
}

std::uint64_t validator_cell_checks() { return g_cell_checks; }

} // namespace zarforge

#include "zarforge/bounds.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "zarforge/binomial.hpp"
#include "zarforge/errors.hpp"
#include "zarforge/validator.hpp"

namespace zarforge {

namespace {

using u128 = unsigned __int128;

u128 binom128(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    return r;
}

// Numerator/denominator of the bound at a given k, kept exact:
// ((t-1)*C(m,s)*s + C(k,s-1)*(k+1)*(s-1)*n) / (C(k,s-1)*s)
struct Rational {
    u128 num;
    u128 den;
};

Rational roman_rational(const ZarParams& p, int k) {
    const u128 b = binom128(k, p.s - 1);
    if (b == 0) throw std::invalid_argument("roman_upper_bound: C(k, s-1) is zero");
    const u128 num = static_cast<u128>(p.t - 1) * binom128(p.m, p.s) * static_cast<u128>(p.s) +
                     b * static_cast<u128>(k + 1) * static_cast<u128>(p.s - 1) *
                         static_cast<u128>(p.n);
    return {num, b * static_cast<u128>(p.s)};
}

} // namespace

double roman_upper_bound(const ZarParams& params, int k) {
    const Rational r = roman_rational(params, k);
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

std::int64_t best_roman(const ZarParams& params) {
    // floor(a/b) < floor(c/d)  <=>  compare a*d with c*b; stay exact throughout.
    std::optional<Rational> best;
    for (int k = std::max(0, params.s - 1); k <= params.m; ++k) {
        const Rational r = roman_rational(params, k);
        if (!best || r.num * best->den < best->num * r.den) best = r;
    }
    if (!best) throw std::logic_error("best_roman: empty k range");
    return static_cast<std::int64_t>(best->num / best->den);
}

BoundsRecord certify(const BoundsRecord& record, const BinaryMatrix& m) {
    if (m.rows() != record.params.m || m.cols() != record.params.n)
        throw std::invalid_argument("certify: matrix dims do not match the record");
    if (auto witness = find_witness(m, record.params))
        throw ValidationError("certify: construction fails validation", *witness);

    BoundsRecord out = record;
    const std::int64_t c = m.count_ones();
    if (!out.lower || c > *out.lower) out.lower = c;
    if (out.upper && *out.lower > *out.upper)
        throw std::logic_error("certify: valid construction exceeds the recorded upper bound");
    out.tight = out.lower && out.upper && *out.lower == *out.upper;
    return out;
}

std::int64_t brute_force_exact(const ZarParams& params) {
    const int cells = params.m * params.n;
    if (cells > 20) throw GuardError("brute_force_exact: m*n > 20 exceeds the search guard");

    std::int64_t best = -1;
    const std::uint64_t top = 1ULL << cells;
    BinaryMatrix m(params.m, params.n);
    for (std::uint64_t bits = 0; bits < top; ++bits) {
        if (std::popcount(bits) <= best) continue;
        for (int c = 0; c < cells; ++c) m.set(c / params.n, c % params.n, (bits >> c) & 1);
        if (is_valid(m, params)) best = std::popcount(bits);
    }
    return best;
}

std::vector<BoundsRecord> builtin_registry() {
    std::vector<BoundsRecord> reg;
    auto tight = [&](int m, int n, std::int64_t v) {
        BoundsRecord r;
        r.params = ZarParams(m, n, 3, 3);
        r.lower = v;
        r.upper = v;
        r.tight = true;
        r.provenance = "verified construction matching the published upper bound";
        reg.push_back(r);
    };
    auto lower_only = [&](int m, int n, std::int64_t v) {
        BoundsRecord r;
        r.params = ZarParams(m, n, 3, 3);
        r.lower = v;
        r.provenance = "verified seed construction";
        reg.push_back(r);
    };
    tight(11, 21, 116);
    tight(11, 22, 121);
    tight(12, 22, 132);
    lower_only(8, 23, 94);
    lower_only(9, 22, 97);
    lower_only(16, 15, 123);
    lower_only(16, 16, 119);
    return reg;
}

namespace {

std::optional<std::int64_t> parse_opt_int(const std::string& field, const char* what) {
    if (field.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bounds csv: bad ") + what + " field \"" + field + "\"");
    }
}

} // namespace

std::vector<BoundsRecord> load_bounds_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("bounds csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "m,n,s,t,lower,upper,provenance")
        throw ParseError("bounds csv: missing header \"m,n,s,t,lower,upper,provenance\"");

    std::vector<BoundsRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (int f = 0; f < 6; ++f) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                throw ParseError("bounds csv: row with fewer than 7 fields: " + line);
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        fields.push_back(line.substr(start)); // provenance, may contain commas

        BoundsRecord r;
        const auto m = parse_opt_int(fields[0], "m"), n = parse_opt_int(fields[1], "n"),
                   s = parse_opt_int(fields[2], "s"), t = parse_opt_int(fields[3], "t");
        if (!m || !n || !s || !t) throw ParseError("bounds csv: m,n,s,t are required: " + line);
        try {
            r.params = ZarParams(static_cast<int>(*m), static_cast<int>(*n), static_cast<int>(*s),
                                 static_cast<int>(*t));
        } catch (const std::exception& e) {
            throw ParseError(std::string("bounds csv: ") + e.what());
        }
        r.lower = parse_opt_int(fields[4], "lower");
        r.upper = parse_opt_int(fields[5], "upper");
        if (r.lower && r.upper && *r.lower > *r.upper)
            throw ParseError("bounds csv: lower exceeds upper: " + line);
        r.tight = r.lower && r.upper && *r.lower == *r.upper;
        r.provenance = fields[6];
        records.push_back(std::move(r));
    }
    return records;
}

std::string save_bounds_csv(const std::vector<BoundsRecord>& records) {
    std::string out = "m,n,s,t,lower,upper,provenance\n";
    for (const BoundsRecord& r : records) {
        out += std::to_string(r.params.m) + "," + std::to_string(r.params.n) + "," +
               std::to_string(r.params.s) + "," + std::to_string(r.params.t) + ",";
        if (r.lower) out += std::to_string(*r.lower);
        out += ",";
        if (r.upper) out += std::to_string(*r.upper);
        out += "," + r.provenance + "\n";
    }
    return out;
}

} // namespace zarforge

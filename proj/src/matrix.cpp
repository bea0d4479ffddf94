#include "zarforge/matrix.hpp"

#include <bit>
#include <sstream>

namespace zarforge {

BinaryMatrix::BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("BinaryMatrix: negative dimensions");
    words_ = (cols + 63) / 64;
    bits_.assign(static_cast<std::size_t>(rows) * words_, 0);
}

int BinaryMatrix::row_ones(int i) const {
    const std::uint64_t* r = row(i);
    int total = 0;
    for (int w = 0; w < words_; ++w) total += std::popcount(r[w]);
    return total;
}

std::int64_t BinaryMatrix::count_ones() const {
    std::int64_t total = 0;
    for (const std::uint64_t w : bits_) total += std::popcount(w);
    return total;
}

BinaryMatrix new_matrix(const ZarParams& params) { return BinaryMatrix(params.m, params.n); }

std::int64_t count_ones(const BinaryMatrix& m) { return m.count_ones(); }

BinaryMatrix transpose(const BinaryMatrix& m) {
    BinaryMatrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(i, j)) out.set(j, i, true);
    return out;
}

BinaryMatrix permute(const BinaryMatrix& m,
                     const std::vector<int>& row_perm,
                     const std::vector<int>& col_perm) {
    if (static_cast<int>(row_perm.size()) != m.rows() ||
        static_cast<int>(col_perm.size()) != m.cols())
        throw std::invalid_argument("permute: permutation length does not match matrix dims");
    BinaryMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(row_perm[i], col_perm[j])) out.set(i, j, true);
    return out;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (const char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

} // namespace

MatrixFile parse_matrix_file(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("matrix file: empty input");

    std::istringstream header(lines[0]);
    int m = 0, n = 0;
    std::string trailing;
    if (!(header >> m >> n) || (header >> trailing) || m < 1 || n < 1)
        throw ParseError("matrix file: malformed header, expected \"m n\"");

    MatrixFile out;
    std::size_t next = 1;
    if (next < lines.size() && !lines[next].empty() && lines[next][0] == '#') {
        std::istringstream comment(lines[next].substr(1));
        MatrixClaim claim;
        if (!(comment >> claim.s >> claim.t >> claim.lower_bound_claim))
            throw ParseError("matrix file: malformed claim line, expected \"# s t lower_bound_claim\"");
        out.claim = claim;
        ++next;
    }

    if (lines.size() < next + static_cast<std::size_t>(m))
        throw ParseError("matrix file: fewer rows than the header declares");

    BinaryMatrix mat(m, n);
    for (int i = 0; i < m; ++i) {
        const std::string& line = lines[next + i];
        if (static_cast<int>(line.size()) != n)
            throw ParseError("matrix file: ragged row " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            if (line[j] == '1')
                mat.set(i, j, true);
            else if (line[j] != '0')
                throw ParseError("matrix file: non-0/1 character in row " + std::to_string(i));
        }
    }
    for (std::size_t k = next + m; k < lines.size(); ++k)
        if (!lines[k].empty()) throw ParseError("matrix file: unexpected trailing content");

    out.matrix = std::move(mat);
    return out;
}

BinaryMatrix parse_matrix(const std::string& text) { return parse_matrix_file(text).matrix; }

std::string serialize_matrix(const BinaryMatrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    out.reserve(out.size() + static_cast<std::size_t>(m.rows()) * (m.cols() + 1));
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out.push_back(m.get(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string serialize_matrix(const BinaryMatrix& m, const MatrixClaim& claim) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    out += "# " + std::to_string(claim.s) + " " + std::to_string(claim.t) + " " +
           std::to_string(claim.lower_bound_claim) + "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out.push_back(m.get(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

} // namespace zarforge

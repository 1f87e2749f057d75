#include "pqnewton/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pqn {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

// Splits on whitespace without allocating a stream per line.
std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

SparseMatrix parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw MatrixMarketError("empty stream", 0);
    ++lineno;
    const auto head = tokens(line);
    if (head.size() != 5 || head[0] != "%%MatrixMarket") {
        throw MatrixMarketError("malformed header", lineno);
    }
    const std::string object = lower(std::string(head[1]));
    const std::string format = lower(std::string(head[2]));
    const std::string field = lower(std::string(head[3]));
    const std::string symmetry = lower(std::string(head[4]));
    if (object != "matrix" || format != "coordinate") {
        throw MatrixMarketError("only 'matrix coordinate' is supported", lineno);
    }
    if (field != "real" && field != "double") {
        throw MatrixMarketError("unsupported field '" + field + "'", lineno);
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw MatrixMarketError("unsupported symmetry '" + symmetry + "'", lineno);
    }
    const bool symmetric = symmetry == "symmetric";

    std::size_t rows = 0, cols = 0, declared = 0;
    bool have_size = false;
    while (!have_size && std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        const auto t = tokens(line);
        if (t.size() != 3 || !parse_number(t[0], rows) || !parse_number(t[1], cols) ||
            !parse_number(t[2], declared)) {
            throw MatrixMarketError("malformed size line", lineno);
        }
        have_size = true;
    }
    if (!have_size) throw MatrixMarketError("missing size line", lineno);
    if (symmetric && rows != cols) throw MatrixMarketError("symmetric matrix is not square", lineno);

    std::vector<Triplet> entries;
    entries.reserve(symmetric ? 2 * declared : declared);
    std::size_t seen = 0;
    while (seen < declared && std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        const auto t = tokens(line);
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (t.size() != 3) throw MatrixMarketError("expected 'row col value'", lineno);
        if (!parse_number(t[0], i) || !parse_number(t[1], j)) {
            throw MatrixMarketError("non-integer index", lineno);
        }
        if (!parse_number(t[2], v) || !std::isfinite(v)) {
            throw MatrixMarketError("non-numeric value '" + std::string(t[2]) + "'", lineno);
        }
        if (i < 1 || i > rows || j < 1 || j > cols) {
            throw MatrixMarketError("index out of declared bounds", lineno);
        }
        entries.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
        ++seen;
    }
    if (seen < declared) {
        throw MatrixMarketError("truncated body: expected " + std::to_string(declared) +
                                    " entries, found " + std::to_string(seen),
                                lineno);
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return parse_matrix_market(in);
    } catch (const MatrixMarketError& e) {
        throw MatrixMarketError(path.string() + ": " + e.what(), e.line());
    }
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto cols = a.row_cols(i);
        const auto vals = a.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, vals[k]);
            out << i + 1 << ' ' << cols[k] + 1 << ' ' << std::string_view(buf, ptr - buf) << '\n';
        }
    }
}

std::vector<double> parse_vector(std::istream& in) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%' || line[0] == '#') continue;
        for (auto tok : tokens(line)) {
            double v = 0.0;
            if (!parse_number(tok, v) || !std::isfinite(v)) {
                throw MatrixMarketError("non-numeric vector entry '" + std::string(tok) + "'",
                                        lineno);
            }
            out.push_back(v);
        }
    }
    return out;
}

std::vector<double> read_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_vector(in);
}

void write_vector(std::span<const double> v, std::ostream& out) {
    char buf[64];
    for (double x : v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
        out << std::string_view(buf, ptr - buf) << '\n';
    }
}

}  // namespace pqn

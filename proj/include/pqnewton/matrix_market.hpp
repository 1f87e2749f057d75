#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqnewton/sparse_matrix.hpp"

namespace pqn {

class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Reads "%%MatrixMarket matrix coordinate real {general|symmetric}".
// Indices are converted to 0-based, symmetric storage is expanded and
// duplicate coordinates are summed.
SparseMatrix parse_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

// Writes general coordinate format with round-trip precision.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);

// Dense vector files: one value per line (whitespace separated values are
// also accepted), lines starting with '%' or '#' are comments.
std::vector<double> parse_vector(std::istream& in);
std::vector<double> read_vector(const std::filesystem::path& path);
void write_vector(std::span<const double> v, std::ostream& out);

}  // namespace pqn

#include "pqnewton/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pqn {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0) {
        throw std::invalid_argument("SparseMatrix: row_ptr must have rows+1 entries starting at 0");
    }
    if (col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
        throw std::invalid_argument("SparseMatrix: nnz does not match the row lengths");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        if (row_ptr_[i + 1] < row_ptr_[i]) {
            throw std::invalid_argument("SparseMatrix: row_ptr is not monotone");
        }
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (col_idx_[k] >= cols_) {
                throw std::invalid_argument("SparseMatrix: column index out of range in row " +
                                            std::to_string(i));
            }
            if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
                throw std::invalid_argument("SparseMatrix: column indices not increasing in row " +
                                            std::to_string(i));
            }
            if (!std::isfinite(values_[k])) {
                throw std::invalid_argument("SparseMatrix: non-finite value in row " +
                                            std::to_string(i));
            }
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
    for (const auto& e : entries) {
        if (e.row >= rows || e.col >= cols) {
            throw std::invalid_argument("SparseMatrix: triplet index out of range");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::vector<std::size_t> row_ptr(rows + 1, 0);
    std::vector<std::size_t> col_idx;
    std::vector<double> values;
    col_idx.reserve(entries.size());
    values.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
            values.back() += e.value;
            continue;
        }
        col_idx.push_back(e.col);
        values.push_back(e.value);
        ++row_ptr[e.row + 1];
    }
    for (std::size_t i = 0; i < rows; ++i) row_ptr[i + 1] += row_ptr[i];
    return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<std::size_t> row_ptr(n + 1);
    std::vector<std::size_t> col_idx(n);
    for (std::size_t i = 0; i <= n; ++i) row_ptr[i] = i;
    for (std::size_t i = 0; i < n; ++i) col_idx[i] = i;
    return SparseMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

void matvec(const SparseMatrix& a, std::span<const double> v, std::span<double> y,
            MatvecCounter* counter) {
    if (v.size() != a.cols() || y.size() != a.rows()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    const auto ptr = a.row_ptr();
    const auto idx = a.col_idx();
    const auto val = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) sum += val[k] * v[idx[k]];
        y[i] = sum;
    }
    if (counter) counter->increment();
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> v,
                           MatvecCounter* counter) {
    std::vector<double> y(a.rows());
    matvec(a, v, y, counter);
    return y;
}

void matvec_transpose(const SparseMatrix& a, std::span<const double> u, std::span<double> y,
                      MatvecCounter* counter) {
    if (u.size() != a.rows() || y.size() != a.cols()) {
        throw std::invalid_argument("matvec_transpose: dimension mismatch");
    }
    std::fill(y.begin(), y.end(), 0.0);
    const auto ptr = a.row_ptr();
    const auto idx = a.col_idx();
    const auto val = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double ui = u[i];
        for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) y[idx[k]] += val[k] * ui;
    }
    if (counter) counter->increment();
}

std::vector<double> matvec_transpose(const SparseMatrix& a, std::span<const double> u,
                                     MatvecCounter* counter) {
    std::vector<double> y(a.cols());
    matvec_transpose(a, u, y, counter);
    return y;
}

std::vector<double> row_sq_norms(const SparseMatrix& a) {
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (double v : a.row_values(i)) sum += v * v;
        out[i] = sum;
    }
    return out;
}

}  // namespace pqn

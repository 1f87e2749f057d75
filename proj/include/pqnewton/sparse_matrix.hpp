#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pqn {

/// Counts sparse kernel invocations for one run. Each call to matvec or
/// matvec_transpose adds one, regardless of the matrix size.
class MatvecCounter {
public:
    MatvecCounter() = default;
    MatvecCounter(const MatvecCounter&) = delete;
    MatvecCounter& operator=(const MatvecCounter&) = delete;

    void increment() noexcept { count_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t value() const noexcept { return count_.load(std::memory_order_relaxed); }
    void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> count_{0};
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Real m x n matrix in compressed sparse row form.
///
/// Column indices are strictly increasing within each row and stored values
/// are finite. Explicit zeros are kept and count towards nnz(). Rows without
/// entries are allowed.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Validates and adopts raw CSR arrays. Throws std::invalid_argument when
    /// any structural invariant fails.
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                 std::vector<std::size_t> col_idx, std::vector<double> values);

    /// Builds from coordinate entries in any order; duplicates are summed.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> entries);

    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const std::size_t> row_cols(std::size_t i) const noexcept {
        return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> row_values(std::size_t i) const noexcept {
        return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

// y = A v. Row sums run left to right in stored order.
void matvec(const SparseMatrix& a, std::span<const double> v, std::span<double> y,
            MatvecCounter* counter = nullptr);
std::vector<double> matvec(const SparseMatrix& a, std::span<const double> v,
                           MatvecCounter* counter = nullptr);

// y = A^T u, scattered in row-major traversal order of A.
void matvec_transpose(const SparseMatrix& a, std::span<const double> u, std::span<double> y,
                      MatvecCounter* counter = nullptr);
std::vector<double> matvec_transpose(const SparseMatrix& a, std::span<const double> u,
                                     MatvecCounter* counter = nullptr);

/// Diagonal of A A^T: squared Euclidean norm of every row (zero for null rows).
std::vector<double> row_sq_norms(const SparseMatrix& a);

}  // namespace pqn

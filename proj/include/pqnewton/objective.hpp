#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pqnewton/sparse_matrix.hpp"

namespace pqn {

/// Data of phi(p) = 1/2 ||(xhat + A^T p)_+||^2 - b^T p, the dual of projecting
/// xhat onto {x >= 0 : A x = b}. Row norms of A are cached at construction.
class ProjectionProblem {
public:
    ProjectionProblem(SparseMatrix a, std::vector<double> b, std::vector<double> xhat);

    const SparseMatrix& matrix() const noexcept { return a_; }
    std::span<const double> b() const noexcept { return b_; }
    std::span<const double> xhat() const noexcept { return xhat_; }
    /// Diag(A A^T).
    std::span<const double> rowsq() const noexcept { return rowsq_; }

    std::size_t rows() const noexcept { return a_.rows(); }
    std::size_t cols() const noexcept { return a_.cols(); }

private:
    SparseMatrix a_;
    std::vector<double> b_;
    std::vector<double> xhat_;
    std::vector<double> rowsq_;
};

/// 0/1 indicator of the strictly positive components of xhat + A^T p.
/// Exact zeros are inactive.
struct ActiveSet {
    std::vector<std::uint8_t> indicator;

    std::size_t size() const noexcept { return indicator.size(); }
    std::size_t count() const noexcept;
    bool operator==(const ActiveSet&) const = default;
};

std::vector<double> positive_part(std::span<const double> v);

struct PhiValue {
    double phi = 0.0;
    std::vector<double> x;        ///< (xhat + A^T p)_+
    std::vector<double> shifted;  ///< xhat + A^T p, kept for reuse by line searches
};

/// One matvec_transpose.
PhiValue eval_phi(const ProjectionProblem& prob, std::span<const double> p,
                  MatvecCounter* counter = nullptr);

/// g = A x - b with x = (xhat + A^T p)_+ already evaluated. One matvec.
std::vector<double> eval_gradient(const ProjectionProblem& prob, std::span<const double> x,
                                  MatvecCounter* counter = nullptr);

ActiveSet active_set(const ProjectionProblem& prob, std::span<const double> p,
                     MatvecCounter* counter = nullptr);
ActiveSet active_set_of(std::span<const double> shifted);

/// M v = A Diag(ind) A^T v + delta Diag(A A^T) v, applied matrix-free with
/// exactly two sparse kernel calls.
std::vector<double> apply_M(const ProjectionProblem& prob, const ActiveSet& act, double delta,
                            std::span<const double> v, MatvecCounter* counter = nullptr);

/// Diagonal of M in O(nnz(A)): sum over active columns of A_ij^2 plus
/// delta * rowsq_i. Entries are exactly zero for null rows when delta = 0 or
/// every column of the row is inactive.
std::vector<double> diag_M(const ProjectionProblem& prob, const ActiveSet& act, double delta);

/// Sufficient condition under which phi is exactly quadratic on the segment
/// [p, p + q]: every component where A^T q opposes xhat + A^T p is no larger
/// in magnitude. Diagnostic only; two matvec_transpose calls.
bool is_locally_quadratic(const ProjectionProblem& prob, std::span<const double> p,
                          std::span<const double> q, MatvecCounter* counter = nullptr);

}  // namespace pqn

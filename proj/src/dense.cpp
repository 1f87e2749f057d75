#include "pqnewton/dense.hpp"

#include <cmath>

namespace pqn {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
    if (v.size() != cols_) throw std::invalid_argument("DenseMatrix::multiply: dimension mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        const double* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> DenseMatrix::multiply_transpose(std::span<const double> u) const {
    if (u.size() != rows_) {
        throw std::invalid_argument("DenseMatrix::multiply_transpose: dimension mismatch");
    }
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) out[j] += r[j] * u[i];
    }
    return out;
}

DenseMatrix cholesky_factor(const DenseMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("cholesky_factor: matrix is not square");
    const std::size_t n = h.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = h(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag)) throw NotPositiveDefinite(j);
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = h(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const DenseMatrix& h, std::span<const double> g) {
    if (g.size() != h.rows()) throw std::invalid_argument("cholesky_solve: dimension mismatch");
    const DenseMatrix l = cholesky_factor(h);
    const std::size_t n = g.size();
    std::vector<double> y(g.begin(), g.end());
    // L y = g
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    // L^T d = y
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * y[k];
        y[i] = s / l(i, i);
    }
    return y;
}

}  // namespace pqn

#include "pqnewton/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pqnewton/vector_ops.hpp"

namespace pqn {

ProjectionProblem::ProjectionProblem(SparseMatrix a, std::vector<double> b,
                                     std::vector<double> xhat)
    : a_(std::move(a)), b_(std::move(b)), xhat_(std::move(xhat)) {
    if (b_.size() != a_.rows()) {
        throw std::invalid_argument("ProjectionProblem: |b| must equal the number of rows");
    }
    if (xhat_.size() != a_.cols()) {
        throw std::invalid_argument("ProjectionProblem: |xhat| must equal the number of columns");
    }
    if (!all_finite(b_) || !all_finite(xhat_)) {
        throw std::invalid_argument("ProjectionProblem: b and xhat must be finite");
    }
    rowsq_ = row_sq_norms(a_);
}

std::size_t ActiveSet::count() const noexcept {
    return static_cast<std::size_t>(std::count(indicator.begin(), indicator.end(), 1));
}

std::vector<double> positive_part(std::span<const double> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double t) { return t > 0.0 ? t : 0.0; });
    return out;
}

PhiValue eval_phi(const ProjectionProblem& prob, std::span<const double> p,
                  MatvecCounter* counter) {
    if (p.size() != prob.rows()) throw std::invalid_argument("eval_phi: dimension mismatch");
    PhiValue out;
    out.shifted = matvec_transpose(prob.matrix(), p, counter);
    const auto xhat = prob.xhat();
    for (std::size_t j = 0; j < out.shifted.size(); ++j) out.shifted[j] += xhat[j];
    out.x = positive_part(out.shifted);
    out.phi = 0.5 * dot(out.x, out.x) - dot(prob.b(), p);
    if (!std::isfinite(out.phi)) throw std::overflow_error("eval_phi: non-finite objective");
    return out;
}

std::vector<double> eval_gradient(const ProjectionProblem& prob, std::span<const double> x,
                                  MatvecCounter* counter) {
    if (x.size() != prob.cols()) throw std::invalid_argument("eval_gradient: dimension mismatch");
    auto g = matvec(prob.matrix(), x, counter);
    const auto b = prob.b();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= b[i];
    return g;
}

ActiveSet active_set_of(std::span<const double> shifted) {
    ActiveSet act;
    act.indicator.resize(shifted.size());
    for (std::size_t j = 0; j < shifted.size(); ++j) act.indicator[j] = shifted[j] > 0.0 ? 1 : 0;
    return act;
}

ActiveSet active_set(const ProjectionProblem& prob, std::span<const double> p,
                     MatvecCounter* counter) {
    if (p.size() != prob.rows()) throw std::invalid_argument("active_set: dimension mismatch");
    auto u = matvec_transpose(prob.matrix(), p, counter);
    const auto xhat = prob.xhat();
    for (std::size_t j = 0; j < u.size(); ++j) u[j] += xhat[j];
    return active_set_of(u);
}

std::vector<double> apply_M(const ProjectionProblem& prob, const ActiveSet& act, double delta,
                            std::span<const double> v, MatvecCounter* counter) {
    if (v.size() != prob.rows() || act.size() != prob.cols()) {
        throw std::invalid_argument("apply_M: dimension mismatch");
    }
    if (delta < 0.0) throw std::invalid_argument("apply_M: delta must be nonnegative");
    auto w = matvec_transpose(prob.matrix(), v, counter);
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!act.indicator[j]) w[j] = 0.0;
    }
    auto out = matvec(prob.matrix(), w, counter);
    const auto rowsq = prob.rowsq();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta * rowsq[i] * v[i];
    return out;
}

std::vector<double> diag_M(const ProjectionProblem& prob, const ActiveSet& act, double delta) {
    if (act.size() != prob.cols()) throw std::invalid_argument("diag_M: dimension mismatch");
    const auto& a = prob.matrix();
    const auto rowsq = prob.rowsq();
    std::vector<double> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto cols = a.row_cols(i);
        const auto vals = a.row_values(i);
        double sum = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (act.indicator[cols[k]]) sum += vals[k] * vals[k];
        }
        out[i] = sum + delta * rowsq[i];
    }
    return out;
}

bool is_locally_quadratic(const ProjectionProblem& prob, std::span<const double> p,
                          std::span<const double> q, MatvecCounter* counter) {
    if (p.size() != prob.rows() || q.size() != prob.rows()) {
        throw std::invalid_argument("is_locally_quadratic: dimension mismatch");
    }
    auto u = matvec_transpose(prob.matrix(), p, counter);
    const auto w = matvec_transpose(prob.matrix(), q, counter);
    const auto xhat = prob.xhat();
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double uj = u[j] + xhat[j];
        if (w[j] * uj < 0.0 && std::abs(w[j]) > std::abs(uj)) return false;
    }
    return true;
}

}  // namespace pqn

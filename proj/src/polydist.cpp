#include "pqnewton/polydist.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <stdexcept>

#include "pqnewton/logistic.hpp"
#include "pqnewton/vector_ops.hpp"

namespace pqn {
namespace {

// A^T x - b
std::vector<double> face_residual(const PenalizedProblem& prob, std::span<const double> x) {
    auto r = prob.a.multiply_transpose(x);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= prob.b[j];
    return r;
}

}  // namespace

PenalizedProblem build_penalized(const PolyhedraPair& pair, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("build_penalized: epsilon must be > 0");
    const std::size_t s = pair.a1.rows();
    if (pair.a2.rows() != s) throw std::invalid_argument("build_penalized: A1, A2 row mismatch");
    const std::size_t n1 = pair.a1.cols();
    const std::size_t n2 = pair.a2.cols();
    if (pair.b1.size() != n1 || pair.b2.size() != n2) {
        throw std::invalid_argument("build_penalized: |b_k| must equal the columns of A_k");
    }

    PenalizedProblem prob;
    prob.epsilon = epsilon;
    prob.a = DenseMatrix(2 * s, n1 + n2);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < n1; ++j) prob.a(i, j) = pair.a1(i, j);
        for (std::size_t j = 0; j < n2; ++j) prob.a(s + i, n1 + j) = pair.a2(i, j);
    }
    prob.b = pair.b1;
    prob.b.insert(prob.b.end(), pair.b2.begin(), pair.b2.end());
    prob.bmat = DenseMatrix(2 * s, 2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        prob.bmat(i, i) = 1.0;
        prob.bmat(s + i, s + i) = 1.0;
        prob.bmat(i, s + i) = -1.0;
        prob.bmat(s + i, i) = -1.0;
    }
    return prob;
}

PolyValue eval_poly_objective(const PenalizedProblem& prob, std::span<const double> x) {
    if (x.size() != prob.dim()) throw std::invalid_argument("eval_poly_objective: |x| mismatch");
    const double eps = prob.epsilon;
    auto viol = face_residual(prob, x);
    double pen = 0.0;
    for (auto& v : viol) {
        v = v > 0.0 ? v : 0.0;
        pen += v * v;
    }
    const auto bx = prob.bmat.multiply(x);

    PolyValue out;
    out.phi = 0.5 * eps * dot(x, x) + 0.5 * dot(x, bx) + pen / (2.0 * eps);
    out.g = prob.a.multiply(viol);
    for (std::size_t i = 0; i < x.size(); ++i) out.g[i] = eps * x[i] + bx[i] + out.g[i] / eps;
    return out;
}

DenseMatrix eval_poly_hessian(const PenalizedProblem& prob, std::span<const double> x) {
    if (x.size() != prob.dim()) throw std::invalid_argument("eval_poly_hessian: |x| mismatch");
    const std::size_t m = prob.dim();
    const double eps = prob.epsilon;
    const auto r = face_residual(prob, x);

    DenseMatrix h = prob.bmat;
    for (std::size_t i = 0; i < m; ++i) h(i, i) += eps;
    // Lower triangle of A D A^T, then mirrored.
    DenseMatrix pen(m, m);
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (!(r[j] > 0.0)) continue;
        for (std::size_t i = 0; i < m; ++i) {
            const double aij = prob.a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k <= i; ++k) pen(i, k) += aij * prob.a(k, j);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k <= i; ++k) {
            const double v = pen(i, k) / eps;
            h(i, k) += v;
            if (k != i) h(k, i) += v;
        }
    }
    return h;
}

PolyhedraPair generate_polyhedra(std::size_t n) {
    if (n % 2 != 0) throw std::invalid_argument("generate_polyhedra: n must be even");
    if (n < 8) throw std::invalid_argument("generate_polyhedra: n must be at least 8");
    constexpr std::size_t s = 3;
    constexpr std::uint64_t stride = 20;
    const std::size_t half = n / 2;

    LogisticSequence seq;
    // A(i, j) = xi[offset + 20 (i + 3 j)] with 0-based i, j; the index range
    // of one block is 20 * 3 * half wide.
    auto fill = [&](std::uint64_t offset) {
        DenseMatrix a(s, half);
        for (std::size_t j = 0; j < half; ++j) {
            for (std::size_t i = 0; i < s; ++i) {
                a(i, j) = seq.advance_to(offset + stride * (i + s * j));
            }
        }
        for (std::size_t j = 0; j < half; ++j) {
            double nrm = 0.0;
            for (std::size_t i = 0; i < s; ++i) nrm += a(i, j) * a(i, j);
            nrm = std::sqrt(nrm);
            for (std::size_t i = 0; i < s; ++i) a(i, j) /= nrm;
        }
        return a;
    };

    PolyhedraPair pair;
    pair.a1 = fill(0);
    pair.a2 = fill(stride * s * half);

    const std::vector<double> e(s, 1.0);
    pair.b1 = pair.a1.multiply_transpose(e);
    pair.b2 = pair.a2.multiply_transpose(e);
    for (auto& v : pair.b1) v = 1.0 + v;
    for (auto& v : pair.b2) v = 1.0 - v;
    return pair;
}

PolyhedraOracle::PolyhedraOracle(const PenalizedProblem& prob)
    : prob_(prob), b_norm_(norm2(prob.b)), x_(prob.dim(), 0.0) {}

double PolyhedraOracle::evaluate(std::span<const double> x) {
    x_.assign(x.begin(), x.end());
    return eval_poly_objective(prob_, x_).phi;
}

std::vector<double> PolyhedraOracle::gradient() { return eval_poly_objective(prob_, x_).g; }

DirectionResult PolyhedraOracle::direction(std::span<const double> g) {
    const DenseMatrix h = eval_poly_hessian(prob_, x_);
    DirectionResult out;
    out.d = cholesky_solve(h, g);
    out.dtg = dot(out.d, g);
    out.dtMd = dot(out.d, h.multiply(out.d));
    return out;
}

void PolyhedraOracle::begin_line_search(std::span<const double> d) { d_.assign(d.begin(), d.end()); }

double PolyhedraOracle::trial(double alpha) {
    std::vector<double> xt(x_);
    axpy(-alpha, d_, xt);
    return eval_poly_objective(prob_, xt).phi;
}

void PolyhedraOracle::accept(double alpha) { axpy(-alpha, d_, x_); }

DistanceReport solve_distance(const PolyhedraPair& pair, double epsilon,
                              const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const PenalizedProblem prob = build_penalized(pair, epsilon);
    PolyhedraOracle oracle(prob);
    const std::vector<double> x0(prob.dim(), 0.0);
    SolverConfig cfg = config;
    cfg.delta = 0.0;
    const NewtonReport rep = minimize(oracle, x0, cfg);

    DistanceReport out;
    out.faces = pair.faces();
    const std::size_t s = pair.dim();
    out.x1.assign(rep.x_final.begin(), rep.x_final.begin() + static_cast<std::ptrdiff_t>(s));
    out.x2.assign(rep.x_final.begin() + static_cast<std::ptrdiff_t>(s), rep.x_final.end());
    double dist2 = 0.0;
    for (std::size_t i = 0; i < s; ++i) dist2 += (out.x1[i] - out.x2[i]) * (out.x1[i] - out.x2[i]);
    out.distance = std::sqrt(dist2);
    auto r = prob.a.multiply_transpose(rep.x_final);
    double viol = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) viol = std::max(viol, r[j] - prob.b[j]);
    out.constraint_violation = viol;
    out.grad_norm_inf = rep.grad_norm_inf();
    out.newton_iters = rep.newton_iters;
    out.status = rep.status;
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace pqn

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pqnewton/dense.hpp"
#include "pqnewton/newton.hpp"

namespace pqn {

/// Two polyhedra {x : A_k^T x <= b_k} in R^s. Column j of A_k is the outward
/// normal of face j.
struct PolyhedraPair {
    DenseMatrix a1;  ///< s x n1
    std::vector<double> b1;
    DenseMatrix a2;  ///< s x n2
    std::vector<double> b2;

    std::size_t dim() const noexcept { return a1.rows(); }
    std::size_t faces() const noexcept { return a1.cols() + a2.cols(); }
};

/// Penalized form of the distance problem over x = [x1; x2] in R^{2s}:
///   phi(x) = eps/2 ||x||^2 + 1/2 x^T B x + 1/(2 eps) ||(A^T x - b)_+||^2
/// with A = blockdiag(A1, A2), B = [[I, -I], [-I, I]] and b = [b1; b2].
struct PenalizedProblem {
    DenseMatrix a;  ///< 2s x (n1 + n2)
    std::vector<double> b;
    DenseMatrix bmat;  ///< 2s x 2s
    double epsilon = 1e-4;

    std::size_t dim() const noexcept { return a.rows(); }
};

PenalizedProblem build_penalized(const PolyhedraPair& pair, double epsilon);

struct PolyValue {
    double phi = 0.0;
    std::vector<double> g;
};

PolyValue eval_poly_objective(const PenalizedProblem& prob, std::span<const double> x);

/// H(x) = eps I + B + eps^{-1} A D(x) A^T with D = Diag(sign(A^T x - b)_+).
DenseMatrix eval_poly_hessian(const PenalizedProblem& prob, std::span<const double> x);

/// Quasirandom test pair with n/2 faces each in R^3: normals read from the
/// logistic sequence at stride 20, the second polyhedron continuing where the
/// first one's index range ends, both normalized. Centres +e and -e are
/// folded into the right-hand sides, b1 = 1 + A1^T e and b2 = 1 - A2^T e.
PolyhedraPair generate_polyhedra(std::size_t n);

/// Newton oracle using explicit Hessians and a dense Cholesky solve.
class PolyhedraOracle final : public ObjectiveOracle {
public:
    explicit PolyhedraOracle(const PenalizedProblem& prob);

    std::size_t dimension() const override { return prob_.dim(); }
    double gradient_scale() const override { return b_norm_; }
    double evaluate(std::span<const double> x) override;
    std::vector<double> gradient() override;
    DirectionResult direction(std::span<const double> g) override;
    void begin_line_search(std::span<const double> d) override;
    double trial(double alpha) override;
    void accept(double alpha) override;
    std::vector<double> primal() const override { return x_; }

private:
    const PenalizedProblem& prob_;
    double b_norm_;
    std::vector<double> x_;
    std::vector<double> d_;
};

struct DistanceReport {
    std::size_t faces = 0;
    std::vector<double> x1;
    std::vector<double> x2;
    double distance = 0.0;              ///< ||x1 - x2||_2
    double constraint_violation = 0.0;  ///< ||(A^T x - b)_+||_inf
    double grad_norm_inf = 0.0;
    double seconds = 0.0;
    std::size_t newton_iters = 0;
    NewtonStatus status = NewtonStatus::KMaxReached;
};

/// Minimizes the penalized objective from x = 0. config.delta is ignored; the
/// Newton matrix is the generalized Hessian itself.
DistanceReport solve_distance(const PolyhedraPair& pair, double epsilon,
                              const SolverConfig& config = {});

}  // namespace pqn

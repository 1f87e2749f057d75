#pragma once

#include <vector>

#include "pqnewton/newton.hpp"
#include "pqnewton/objective.hpp"
#include "pqnewton/pcg.hpp"

namespace pqn {

/// M = A Diag(ind) A^T + delta Diag(A A^T) as a LinearOperator; each apply
/// costs one matvec_transpose and one matvec.
class RegularizedHessian final : public LinearOperator {
public:
    RegularizedHessian(const ProjectionProblem& prob, const ActiveSet& act, double delta,
                       MatvecCounter* counter = nullptr);

    std::size_t dimension() const override { return prob_.rows(); }
    void apply(std::span<const double> v, std::span<double> out) const override;
    std::vector<double> diagonal() const;

private:
    const ProjectionProblem& prob_;
    const ActiveSet& act_;
    double delta_;
    MatvecCounter* counter_;
    mutable std::vector<double> scratch_;
};

/// Oracle for phi(p) = 1/2 ||(xhat + A^T p)_+||^2 - b^T p with Jacobi PCG
/// directions. Line searches reuse u = xhat + A^T p and w = A^T d, so a
/// Newton step costs one matvec_transpose, one matvec and the PCG work.
class ProjectionOracle final : public ObjectiveOracle {
public:
    ProjectionOracle(const ProjectionProblem& prob, const SolverConfig& config,
                     MatvecCounter& counter);

    std::size_t dimension() const override { return prob_.rows(); }
    double gradient_scale() const override { return b_norm_; }

    double evaluate(std::span<const double> p) override;
    std::vector<double> gradient() override;
    DirectionResult direction(std::span<const double> g) override;
    void begin_line_search(std::span<const double> d) override;
    double trial(double alpha) override;
    void accept(double alpha) override;

    std::vector<double> primal() const override { return x_; }
    std::uint64_t matvecs() const override { return counter_.value(); }

private:
    double phi_from_shifted(std::span<const double> u, double btp) const;

    const ProjectionProblem& prob_;
    SolverConfig config_;
    MatvecCounter& counter_;
    double b_norm_;

    // current point
    std::vector<double> u_;  // xhat + A^T p
    std::vector<double> x_;  // (u)_+
    double btp_ = 0.0;       // b^T p

    // line search
    std::vector<double> w_;  // A^T d
    double btd_ = 0.0;
    mutable std::vector<double> trial_u_;
};

}  // namespace pqn

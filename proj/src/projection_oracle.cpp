#include "pqnewton/projection_oracle.hpp"

#include <stdexcept>

#include "pqnewton/vector_ops.hpp"

namespace pqn {

RegularizedHessian::RegularizedHessian(const ProjectionProblem& prob, const ActiveSet& act,
                                       double delta, MatvecCounter* counter)
    : prob_(prob), act_(act), delta_(delta), counter_(counter), scratch_(prob.cols()) {
    if (act.size() != prob.cols()) throw std::invalid_argument("RegularizedHessian: |ind| != n");
    if (delta < 0.0) throw std::invalid_argument("RegularizedHessian: delta must be >= 0");
}

void RegularizedHessian::apply(std::span<const double> v, std::span<double> out) const {
    matvec_transpose(prob_.matrix(), v, scratch_, counter_);
    for (std::size_t j = 0; j < scratch_.size(); ++j) {
        if (!act_.indicator[j]) scratch_[j] = 0.0;
    }
    matvec(prob_.matrix(), scratch_, out, counter_);
    const auto rowsq = prob_.rowsq();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta_ * rowsq[i] * v[i];
}

std::vector<double> RegularizedHessian::diagonal() const { return diag_M(prob_, act_, delta_); }

ProjectionOracle::ProjectionOracle(const ProjectionProblem& prob, const SolverConfig& config,
                                   MatvecCounter& counter)
    : prob_(prob), config_(config), counter_(counter), b_norm_(norm2(prob.b())) {
    config_.validate();
}

double ProjectionOracle::phi_from_shifted(std::span<const double> u, double btp) const {
    double half_sq = 0.0;
    for (double v : u) {
        if (v > 0.0) half_sq += v * v;
    }
    return 0.5 * half_sq - btp;
}

double ProjectionOracle::evaluate(std::span<const double> p) {
    auto val = eval_phi(prob_, p, &counter_);
    u_ = std::move(val.shifted);
    x_ = std::move(val.x);
    btp_ = dot(prob_.b(), p);
    return val.phi;
}

std::vector<double> ProjectionOracle::gradient() { return eval_gradient(prob_, x_, &counter_); }

DirectionResult ProjectionOracle::direction(std::span<const double> g) {
    const ActiveSet act = active_set_of(u_);
    const RegularizedHessian m(prob_, act, config_.delta, &counter_);
    const JacobiPreconditioner c(m.diagonal());
    PcgOptions opts;
    opts.eps_cg = config_.eps_cg;
    opts.it_max = config_.it_max ? config_.it_max : default_it_max(prob_.rows());
    opts.rule = config_.stop_rule;
    auto pcg = solve_fused(m, c, g, opts);

    DirectionResult out;
    out.d = std::move(pcg.d);
    out.dtg = pcg.dtg;
    out.dtMd = pcg.dtMd;
    out.inner_iterations = pcg.iterations;
    out.inner_stop = pcg.stop_reason;
    out.breakdown = pcg.breakdown;
    return out;
}

void ProjectionOracle::begin_line_search(std::span<const double> d) {
    w_ = matvec_transpose(prob_.matrix(), d, &counter_);
    btd_ = dot(prob_.b(), d);
    trial_u_.resize(u_.size());
}

double ProjectionOracle::trial(double alpha) {
    for (std::size_t j = 0; j < u_.size(); ++j) trial_u_[j] = u_[j] - alpha * w_[j];
    return phi_from_shifted(trial_u_, btp_ - alpha * btd_);
}

void ProjectionOracle::accept(double alpha) {
    for (std::size_t j = 0; j < u_.size(); ++j) {
        u_[j] -= alpha * w_[j];
        x_[j] = u_[j] > 0.0 ? u_[j] : 0.0;
    }
    btp_ -= alpha * btd_;
}

}  // namespace pqn

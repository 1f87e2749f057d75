#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pqnewton/pcg.hpp"

namespace pqn {

/// Tuning parameters of the inexact Newton loop and its inner PCG solve.
struct SolverConfig {
    double delta = 1e-6;    ///< regularization: M = H + delta Diag(A A^T)
    double eps = 1e-12;     ///< stop when ||g|| <= eps ||b||
    double tau = 1e-15;     ///< relative slack in the Armijo test
    double eps_cg = 1e-3;   ///< inner tolerance and cost ratio
    std::size_t k_max = 2000;
    std::size_t l_max = 10;
    std::size_t it_max = 0;  ///< 0 selects min(m, 500)
    StopRule stop_rule = StopRule::Both;

    void validate() const;
};

enum class NewtonStatus { Converged, KMaxReached, Stagnated, PcgBreakdown };
std::string_view to_string(NewtonStatus s);

/// What an oracle hands back for the current iterate: a direction d with
/// d^T g = d^T M d.
struct DirectionResult {
    std::vector<double> d;
    double dtg = 0.0;
    double dtMd = 0.0;
    std::size_t inner_iterations = 0;
    std::optional<StopReason> inner_stop;  ///< empty for direct solves
    bool breakdown = false;

    bool usable() const noexcept;
};

/// Objective, gradient, Newton directions and cheap line-search evaluations
/// for one minimization. The oracle keeps the current point; minimize()
/// drives it through evaluate / direction / trial / accept.
class ObjectiveOracle {
public:
    virtual ~ObjectiveOracle() = default;

    virtual std::size_t dimension() const = 0;
    /// Scale of the convergence test, ||b||_2 for the projection problem.
    virtual double gradient_scale() const = 0;

    /// Makes p the current point and returns phi(p).
    virtual double evaluate(std::span<const double> p) = 0;
    virtual std::vector<double> gradient() = 0;
    virtual DirectionResult direction(std::span<const double> g) = 0;

    /// Caches whatever is needed so that trial(alpha) = phi(p - alpha d) is
    /// cheap.
    virtual void begin_line_search(std::span<const double> d) = 0;
    virtual double trial(double alpha) = 0;
    /// Moves the current point to p - alpha d.
    virtual void accept(double alpha) = 0;

    /// Primal point associated with the current iterate.
    virtual std::vector<double> primal() const = 0;
    virtual std::uint64_t matvecs() const { return 0; }
};

struct BacktrackResult {
    double alpha = 0.0;
    std::vector<double> p_next;
    double phi_next = 0.0;
    std::size_t trials = 0;
    bool armijo = false;     ///< accepted by the sufficient-decrease test
    bool halved = false;     ///< accepted only after halving past l_max
    bool stagnated = false;  ///< no acceptable step above rounding level
};

/// Halving line search over alpha = 1, 1/2, ... (l_max trials), accepting the
/// first alpha with
///   (alpha/2 d^T g + phi(p - alpha d)) - phi(p) <= tau |phi(p)|.
/// When every trial fails, the lowest trial is taken if it still decreases
/// phi by more than tau |phi(p)|. Otherwise halving continues under the same
/// test past l_max (flagged `halved`) until it accepts or the step no longer
/// moves p, which marks the result stagnated.
BacktrackResult backtrack(ObjectiveOracle& oracle, std::span<const double> p,
                          std::span<const double> d, double dtg, double phi_k,
                          const SolverConfig& config);

struct NewtonStep {
    double phi = 0.0;
    double grad_norm = 0.0;
    double dtg = 0.0;
    double dtMd = 0.0;
    double alpha = 0.0;
    double phi_next = 0.0;
    std::size_t trials = 0;
    bool armijo = true;
    bool halved = false;
    std::size_t inner_iterations = 0;
    std::optional<StopReason> inner_stop;
};

struct NewtonReport {
    std::vector<double> p_final;
    std::vector<double> x_final;
    std::vector<double> g_final;
    std::vector<double> phi_history;
    std::vector<double> grad_norm_history;
    std::vector<NewtonStep> steps;
    std::size_t newton_iters = 0;
    std::uint64_t matvec_count = 0;
    NewtonStatus status = NewtonStatus::KMaxReached;

    double grad_norm_inf() const;
    /// Count of inner solves that ended for the given reason.
    std::size_t inner_stops(StopReason r) const;
};

/// Inexact Newton iteration p <- p - alpha d from p0 until ||g|| <= eps ||b||
/// (or ||g|| <= eps when b = 0).
NewtonReport minimize(ObjectiveOracle& oracle, std::span<const double> p0,
                      const SolverConfig& config);

}  // namespace pqn

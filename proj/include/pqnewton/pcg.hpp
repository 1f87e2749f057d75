#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace pqn {

class DenseMatrix;

/// Symmetric positive semidefinite operator v -> M v.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;
    virtual std::size_t dimension() const = 0;
    virtual void apply(std::span<const double> v, std::span<double> out) const = 0;
};

/// C = Diag(M)^{-1}. Diagonal entries below kFloor (null rows of A) are
/// replaced by one so that every entry of C stays finite and positive.
class JacobiPreconditioner {
public:
    static constexpr double kFloor = 1e-300;

    JacobiPreconditioner() = default;
    explicit JacobiPreconditioner(std::span<const double> diagonal);
    static JacobiPreconditioner identity(std::size_t n);

    std::size_t dimension() const noexcept { return inv_diag_.size(); }
    std::span<const double> inverse_diagonal() const noexcept { return inv_diag_; }
    /// Number of diagonal entries that hit the floor.
    std::size_t floored() const noexcept { return floored_; }

    void apply(std::span<const double> r, std::span<double> out) const;

private:
    std::vector<double> inv_diag_;
    std::size_t floored_ = 0;
};

enum class StopReason { NewRule, StandardRule, IterationLimit, Breakdown };
std::string_view to_string(StopReason r);

/// Which termination tests are active. `Both` is the production setting;
/// `Standard` disables the cost-based rule for comparisons.
enum class StopRule { Both, Standard, New };
std::string_view to_string(StopRule r);
StopRule parse_stop_rule(std::string_view s);

/// Scalars of one fused iteration i: gamma = r^T C r, eta = (s^{i-1})^T M s^{i-1},
/// zeta = sum of eta so far = (d^i)^T M d^i.
struct PcgStep {
    double gamma = 0.0;
    double eta_prev = 0.0;
    double zeta = 0.0;
};

struct PcgOutcome {
    std::vector<double> d;
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::IterationLimit;
    double dtg = 0.0;   ///< d^T g
    double dtMd = 0.0;  ///< d^T M d, accumulated from the increments
    std::vector<PcgStep> history;
    bool breakdown = false;  ///< xi*eta - gamma^2 <= 0 or a non-finite scalar
};

/// Called with (i, d^{(i)}) for every iterate, including d^{(0)} = 0.
using IterateObserver = std::function<void(std::size_t, std::span<const double>)>;

struct PcgOptions {
    double eps_cg = 1e-3;
    std::size_t it_max = 500;
    StopRule rule = StopRule::Both;
    IterateObserver observer;
};

/// Default inner iteration cap: min(m, 500).
std::size_t default_it_max(std::size_t m);

/// Fused-reduction PCG for M d = g from d = 0 with the cost-based stopping
/// rule (1/eps + i) eta^{(i-1)} <= zeta^{(i)}, tested from i = 1 on, together
/// with gamma^{(i)} <= eps^2 gamma^{(0)}. All three scalars of an iteration
/// come from one set of iteration-local vectors.
PcgOutcome solve_fused(const LinearOperator& m, const JacobiPreconditioner& c,
                       std::span<const double> g, const PcgOptions& opts);

/// Textbook PCG with the residual test r^T C r <= eps^2 r0^T C r0; serves as
/// the equivalence reference for solve_fused. `opts.rule` is ignored.
PcgOutcome solve_standard(const LinearOperator& m, const JacobiPreconditioner& c,
                          std::span<const double> g, const PcgOptions& opts);

/// theta^2 = d^T M d / g^T M^{-1} g using a dense Cholesky solve. Small
/// systems only.
double theta_squared(const DenseMatrix& m, std::span<const double> g, std::span<const double> d);

}  // namespace pqn

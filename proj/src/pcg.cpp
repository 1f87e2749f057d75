#include "pqnewton/pcg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pqnewton/dense.hpp"
#include "pqnewton/vector_ops.hpp"

namespace pqn {

JacobiPreconditioner::JacobiPreconditioner(std::span<const double> diagonal)
    : inv_diag_(diagonal.size()) {
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        if (!(diagonal[i] >= kFloor)) {
            if (std::isnan(diagonal[i]) || diagonal[i] < 0.0) {
                throw std::invalid_argument("JacobiPreconditioner: negative or NaN diagonal entry");
            }
            inv_diag_[i] = 1.0;
            ++floored_;
        } else {
            inv_diag_[i] = 1.0 / diagonal[i];
        }
    }
}

JacobiPreconditioner JacobiPreconditioner::identity(std::size_t n) {
    std::vector<double> ones(n, 1.0);
    return JacobiPreconditioner(ones);
}

void JacobiPreconditioner::apply(std::span<const double> r, std::span<double> out) const {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = inv_diag_[i] * r[i];
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::NewRule: return "new-rule";
        case StopReason::StandardRule: return "standard-rule";
        case StopReason::IterationLimit: return "it_max";
        case StopReason::Breakdown: return "breakdown";
    }
    return "unknown";
}

std::string_view to_string(StopRule r) {
    switch (r) {
        case StopRule::Both: return "both";
        case StopRule::Standard: return "old";
        case StopRule::New: return "new";
    }
    return "unknown";
}

StopRule parse_stop_rule(std::string_view s) {
    if (s == "both") return StopRule::Both;
    if (s == "old" || s == "standard") return StopRule::Standard;
    if (s == "new") return StopRule::New;
    throw std::invalid_argument("unknown stop rule '" + std::string(s) + "'");
}

std::size_t default_it_max(std::size_t m) { return std::min<std::size_t>(m, 500); }

namespace {

void check_inputs(const LinearOperator& m, const JacobiPreconditioner& c,
                  std::span<const double> g, const PcgOptions& opts) {
    if (m.dimension() != g.size() || c.dimension() != g.size()) {
        throw std::invalid_argument("pcg: dimension mismatch");
    }
    if (!(opts.eps_cg > 0.0 && opts.eps_cg < 1.0)) {
        throw std::invalid_argument("pcg: eps_cg must lie in (0, 1)");
    }
    if (!all_finite(g)) throw std::invalid_argument("pcg: right-hand side is not finite");
}

}  // namespace

PcgOutcome solve_fused(const LinearOperator& m, const JacobiPreconditioner& c,
                       std::span<const double> g, const PcgOptions& opts) {
    check_inputs(m, c, g, opts);
    const std::size_t n = g.size();
    const double inv_eps = 1.0 / opts.eps_cg;
    const double eps2 = opts.eps_cg * opts.eps_cg;
    const bool use_new = opts.rule != StopRule::Standard;
    const bool use_standard = opts.rule != StopRule::New;

    PcgOutcome out;
    out.d.assign(n, 0.0);
    std::vector<double> r(n), w(n), z(n), s(n, 0.0), t(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) r[k] = -g[k];
    if (opts.observer) opts.observer(0, out.d);

    double zeta = 0.0;
    double gamma0 = 0.0;
    for (std::size_t i = 0;; ++i) {
        c.apply(r, w);
        const double gamma = dot(r, w);
        const double eta = i == 0 ? 0.0 : dot(s, t);
        zeta += eta;
        out.history.push_back({gamma, eta, zeta});
        out.iterations = i;
        out.dtMd = zeta;
        if (!std::isfinite(gamma) || !std::isfinite(eta)) {
            out.stop_reason = StopReason::Breakdown;
            out.breakdown = true;
            break;
        }
        if (i == 0) gamma0 = gamma;

        // i = 0 would compare 0 <= 0, so the cost rule starts at i = 1.
        if (use_new && i >= 1 && (inv_eps + static_cast<double>(i)) * eta <= zeta) {
            out.stop_reason = StopReason::NewRule;
            break;
        }
        if ((use_standard && gamma <= eps2 * gamma0) || gamma == 0.0) {
            out.stop_reason = StopReason::StandardRule;
            break;
        }
        if (i >= opts.it_max) {
            out.stop_reason = StopReason::IterationLimit;
            break;
        }

        m.apply(w, z);
        const double xi = dot(w, z);
        double alpha = 0.0;
        double beta = 0.0;
        if (i == 0) {
            if (!(xi > 0.0)) {
                out.stop_reason = StopReason::Breakdown;
                out.breakdown = true;
                break;
            }
            alpha = -gamma / xi;
        } else {
            const double den = xi * eta - gamma * gamma;
            if (!(den > 0.0) || !std::isfinite(den)) {
                out.stop_reason = StopReason::Breakdown;
                out.breakdown = true;
                break;
            }
            const double delta = gamma / den;
            alpha = -eta * delta;
            beta = gamma * delta;
        }
        for (std::size_t k = 0; k < n; ++k) {
            t[k] = z[k] * alpha + t[k] * beta;
            r[k] += t[k];
            s[k] = w[k] * alpha + s[k] * beta;
            out.d[k] += s[k];
        }
        if (opts.observer) opts.observer(i + 1, out.d);
    }
    out.dtg = dot(out.d, g);
    return out;
}

PcgOutcome solve_standard(const LinearOperator& m, const JacobiPreconditioner& c,
                          std::span<const double> g, const PcgOptions& opts) {
    check_inputs(m, c, g, opts);
    const std::size_t n = g.size();
    const double eps2 = opts.eps_cg * opts.eps_cg;

    PcgOutcome out;
    out.d.assign(n, 0.0);
    std::vector<double> r(g.begin(), g.end()), w(n), s(n), q(n);
    c.apply(r, w);
    s = w;
    double rho = dot(r, w);
    const double rho0 = rho;
    double zeta = 0.0;
    double eta = 0.0;
    if (opts.observer) opts.observer(0, out.d);

    out.stop_reason = StopReason::StandardRule;
    for (std::size_t i = 0; rho0 > 0.0; ++i) {
        out.history.push_back({rho, eta, zeta});
        if (i >= opts.it_max) {
            out.stop_reason = StopReason::IterationLimit;
            break;
        }
        m.apply(s, q);
        const double sq = dot(s, q);
        if (!(sq > 0.0) || !std::isfinite(sq)) {
            out.stop_reason = StopReason::Breakdown;
            out.breakdown = true;
            break;
        }
        const double alpha = rho / sq;
        axpy(alpha, s, out.d);
        axpy(-alpha, q, r);
        eta = alpha * alpha * sq;
        zeta += eta;
        out.iterations = i + 1;
        out.dtMd = zeta;
        if (opts.observer) opts.observer(i + 1, out.d);

        c.apply(r, w);
        const double rho_next = dot(r, w);
        if (rho_next <= eps2 * rho0) {
            out.history.push_back({rho_next, eta, zeta});
            out.stop_reason = StopReason::StandardRule;
            break;
        }
        const double beta = rho_next / rho;
        for (std::size_t k = 0; k < n; ++k) s[k] = w[k] + beta * s[k];
        rho = rho_next;
    }
    out.dtg = dot(out.d, g);
    return out;
}

double theta_squared(const DenseMatrix& m, std::span<const double> g, std::span<const double> d) {
    if (m.rows() != m.cols() || m.rows() != g.size() || d.size() != g.size()) {
        throw std::invalid_argument("theta_squared: dimension mismatch");
    }
    const auto minv_g = cholesky_solve(m, g);
    const auto md = m.multiply(d);
    const double denom = dot(g, minv_g);
    if (!(denom > 0.0)) throw std::domain_error("theta_squared: g^T M^{-1} g is not positive");
    return dot(d, md) / denom;
}

}  // namespace pqn

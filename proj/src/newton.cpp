#include "pqnewton/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pqnewton/vector_ops.hpp"

namespace pqn {

void SolverConfig::validate() const {
    if (!(delta >= 0.0)) throw std::invalid_argument("SolverConfig: delta must be >= 0");
    if (!(eps > 0.0)) throw std::invalid_argument("SolverConfig: eps must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("SolverConfig: tau must be >= 0");
    if (!(eps_cg > 0.0 && eps_cg < 1.0)) {
        throw std::invalid_argument("SolverConfig: eps_cg must lie in (0, 1)");
    }
    if (l_max == 0) throw std::invalid_argument("SolverConfig: l_max must be >= 1");
    if (it_max == 1) throw std::invalid_argument("SolverConfig: it_max must be >= 2");
}

std::string_view to_string(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::Converged: return "converged";
        case NewtonStatus::KMaxReached: return "k_max_reached";
        case NewtonStatus::Stagnated: return "stagnated";
        case NewtonStatus::PcgBreakdown: return "pcg_breakdown";
    }
    return "unknown";
}

bool DirectionResult::usable() const noexcept {
    return std::isfinite(dtg) && dtg > 0.0 && all_finite(d);
}

double NewtonReport::grad_norm_inf() const { return norm_inf(g_final); }

std::size_t NewtonReport::inner_stops(StopReason r) const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.inner_stop == r ? 1 : 0;
    return n;
}

BacktrackResult backtrack(ObjectiveOracle& oracle, std::span<const double> p,
                          std::span<const double> d, double dtg, double phi_k,
                          const SolverConfig& config) {
    if (p.size() != d.size()) throw std::invalid_argument("backtrack: dimension mismatch");
    if (!(dtg > 0.0)) throw std::invalid_argument("backtrack: d is not a descent direction");

    oracle.begin_line_search(d);
    const double slack = config.tau * std::abs(phi_k);
    BacktrackResult out;
    double best_alpha = 0.0;
    double best_phi = std::numeric_limits<double>::infinity();

    double alpha = 1.0;
    for (std::size_t l = 0; l < config.l_max; ++l, alpha *= 0.5) {
        const double phi_t = oracle.trial(alpha);
        ++out.trials;
        if (!std::isfinite(phi_t)) continue;
        if (phi_t < best_phi) {
            best_phi = phi_t;
            best_alpha = alpha;
        }
        const double zeta = (0.5 * alpha * dtg + phi_t) - phi_k;
        if (zeta <= slack) {
            out.alpha = alpha;
            out.phi_next = phi_t;
            out.armijo = true;
            break;
        }
    }
    if (!out.armijo) {
        if (best_phi < phi_k - slack) {
            out.alpha = best_alpha;
            out.phi_next = best_phi;
        } else {
            // Nothing decreased phi. From p = 0 with xhat = 0 every column is
            // inactive, M = delta Diag(A A^T) and d is ~1/delta too long, so
            // keep halving under the same test until it accepts. For small
            // alpha the test reduces to -alpha/2 d^T g <= slack, so this ends
            // unless the step drops below rounding.
            double pnorm = 0.0, dnorm = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                pnorm = std::max(pnorm, std::abs(p[i]));
                dnorm = std::max(dnorm, std::abs(d[i]));
            }
            for (; alpha * dnorm > std::numeric_limits<double>::epsilon() * pnorm && alpha > 0.0;
                 alpha *= 0.5) {
                const double phi_t = oracle.trial(alpha);
                ++out.trials;
                if (!std::isfinite(phi_t)) continue;
                if ((0.5 * alpha * dtg + phi_t) - phi_k <= slack) {
                    out.alpha = alpha;
                    out.phi_next = phi_t;
                    out.armijo = true;
                    out.halved = true;
                    break;
                }
            }
            if (!out.armijo) {
                out.stagnated = true;
                out.alpha = 0.0;
                out.phi_next = phi_k;
            }
        }
    }
    out.p_next.assign(p.begin(), p.end());
    axpy(-out.alpha, d, out.p_next);
    return out;
}

NewtonReport minimize(ObjectiveOracle& oracle, std::span<const double> p0,
                      const SolverConfig& config) {
    config.validate();
    if (p0.size() != oracle.dimension()) throw std::invalid_argument("minimize: |p0| mismatch");
    if (!all_finite(p0)) throw std::invalid_argument("minimize: p0 must be finite");

    NewtonReport rep;
    std::vector<double> p(p0.begin(), p0.end());
    double phi = oracle.evaluate(p);
    const double scale = oracle.gradient_scale();
    const double threshold = scale > 0.0 ? config.eps * scale : config.eps;

    for (std::size_t k = 0;; ++k) {
        if (!std::isfinite(phi)) throw std::overflow_error("minimize: non-finite objective");
        auto g = oracle.gradient();
        const double gn = norm2(g);
        rep.phi_history.push_back(phi);
        rep.grad_norm_history.push_back(gn);
        rep.g_final = std::move(g);
        rep.newton_iters = k;

        if (gn <= threshold) {
            rep.status = NewtonStatus::Converged;
            break;
        }
        if (k >= config.k_max) {
            rep.status = NewtonStatus::KMaxReached;
            break;
        }

        auto dir = oracle.direction(rep.g_final);
        NewtonStep step;
        step.phi = phi;
        step.grad_norm = gn;
        step.dtg = dir.dtg;
        step.dtMd = dir.dtMd;
        step.inner_iterations = dir.inner_iterations;
        step.inner_stop = dir.inner_stop;
        if (!dir.usable()) {
            rep.steps.push_back(step);
            rep.status = NewtonStatus::PcgBreakdown;
            break;
        }

        auto bt = backtrack(oracle, p, dir.d, dir.dtg, phi, config);
        step.alpha = bt.alpha;
        step.phi_next = bt.phi_next;
        step.trials = bt.trials;
        step.armijo = bt.armijo;
        step.halved = bt.halved;
        rep.steps.push_back(step);
        if (bt.stagnated) {
            rep.status = NewtonStatus::Stagnated;
            break;
        }
        oracle.accept(bt.alpha);
        p = std::move(bt.p_next);
        phi = bt.phi_next;
    }

    rep.p_final = std::move(p);
    rep.x_final = oracle.primal();
    rep.matvec_count = oracle.matvecs();
    return rep;
}

}  // namespace pqn

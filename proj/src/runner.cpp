#include "pqnewton/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pqnewton/matrix_market.hpp"
#include "pqnewton/projection_oracle.hpp"
#include "pqnewton/vector_ops.hpp"

namespace pqn {

std::vector<double> feasible_rhs(const SparseMatrix& a, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x0(a.cols());
    for (auto& v : x0) {
        const double keep = unit(rng);
        const double mag = unit(rng);
        v = keep < 0.25 ? 0.0 : mag;
    }
    return matvec(a, x0);
}

std::vector<double> resolve_rhs(const SparseMatrix& a, const std::string& source,
                                const std::filesystem::path& matrix_path) {
    constexpr std::string_view kFeasible = "feasible:";
    std::vector<double> b;
    if (source.starts_with(kFeasible)) {
        const std::string digits = source.substr(kFeasible.size());
        std::uint64_t seed = 0;
        const auto* first = digits.data();
        const auto* last = first + digits.size();
        auto [ptr, ec] = std::from_chars(first, last, seed);
        if (digits.empty() || ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("bad seed in '" + source + "'");
        }
        return feasible_rhs(a, seed);
    }
    if (source == "auto") {
        auto path = matrix_path;
        path.replace_filename(matrix_path.stem().string() + "_b.txt");
        if (!std::filesystem::exists(path)) {
            throw std::runtime_error("no right-hand side given and " + path.string() +
                                     " does not exist");
        }
        b = read_vector(path);
    } else {
        b = read_vector(source);
    }
    if (b.size() != a.rows()) {
        throw std::invalid_argument("right-hand side has " + std::to_string(b.size()) +
                                    " entries, matrix has " + std::to_string(a.rows()) + " rows");
    }
    return b;
}

SparseMatrix random_sparse(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
    if (m == 0 || n == 0) throw std::invalid_argument("random_sparse: empty shape");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> row(0, m - 1);
    std::uniform_int_distribution<std::size_t> col(0, n - 1);

    std::vector<Triplet> t;
    for (std::size_t i = 0; i < m; ++i) t.push_back({i, col(rng), val(rng)});
    for (std::size_t j = 0; j < n; ++j) t.push_back({row(rng), j, val(rng)});
    const auto extra = static_cast<std::size_t>(density * static_cast<double>(m * n));
    for (std::size_t k = 0; k < extra; ++k) t.push_back({row(rng), col(rng), val(rng)});
    return SparseMatrix::from_triplets(m, n, std::move(t));
}

std::vector<double> resolve_xhat(std::size_t n, const std::string& source) {
    if (source == "zero") return std::vector<double>(n, 0.0);
    auto xhat = read_vector(source);
    if (xhat.size() != n) {
        throw std::invalid_argument("xhat has " + std::to_string(xhat.size()) +
                                    " entries, matrix has " + std::to_string(n) + " columns");
    }
    return xhat;
}

ProjectionRun run_projection(const std::string& name, const ProjectionProblem& prob,
                             const SolverConfig& config) {
    MatvecCounter counter;
    ProjectionOracle oracle(prob, config, counter);
    const std::vector<double> p0(prob.rows(), 0.0);

    const auto start = std::chrono::steady_clock::now();
    ProjectionRun run{{}, minimize(oracle, p0, config)};
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto& rep = run.report;
    RunRecord& r = run.record;
    r.problem = name;
    r.rows = prob.rows();
    r.cols = prob.cols();
    r.nnz = prob.matrix().nnz();
    r.config = config;
    r.wall_time = secs;
    auto res = matvec(prob.matrix(), rep.x_final);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= prob.b()[i];
    r.residual_inf = norm_inf(res);
    r.residual_2 = norm2(res);
    r.x_norm = norm2(rep.x_final);
    r.newton_iters = rep.newton_iters;
    r.matvecs = rep.matvec_count;
    r.status = std::string(to_string(rep.status));
    for (auto reason : {StopReason::NewRule, StopReason::StandardRule, StopReason::IterationLimit,
                        StopReason::Breakdown}) {
        r.pcg_stops[std::string(to_string(reason))] = rep.inner_stops(reason);
    }
    return run;
}

std::vector<NamedProblem> synthetic_suite(const std::filesystem::path& data_dir) {
    std::vector<NamedProblem> out;
    std::uint64_t seed = 1;
    for (const char* stem : {"afiro", "sc50a", "sc50b", "adlittle", "blend", "share2b"}) {
        auto a = read_matrix_market(data_dir / (std::string(stem) + ".mtx"));
        auto b = feasible_rhs(a, seed++);
        const std::size_t n = a.cols();
        out.push_back({stem, ProjectionProblem(std::move(a), std::move(b),
                                               std::vector<double>(n, 0.0))});
    }
    const struct {
        std::size_t m, n;
        double density;
    } shapes[] = {{40, 120, 0.05}, {80, 200, 0.03}, {150, 400, 0.02}, {300, 900, 0.01}};
    for (const auto& s : shapes) {
        auto a = random_sparse(s.m, s.n, s.density, seed);
        auto b = feasible_rhs(a, seed++);
        out.push_back({"random_" + std::to_string(s.m) + "x" + std::to_string(s.n),
                       ProjectionProblem(std::move(a), std::move(b),
                                         std::vector<double>(s.n, 0.0))});
    }
    return out;
}

std::vector<StoppingComparisonRow> compare_stopping(const std::vector<NamedProblem>& problems,
                                                    const std::vector<double>& eps_grid,
                                                    const SolverConfig& base) {
    if (problems.empty()) throw std::invalid_argument("compare_stopping: no problems");
    std::vector<StoppingComparisonRow> rows;
    for (double eps_cg : eps_grid) {
        for (StopRule rule : {StopRule::Standard, StopRule::Both}) {
            StoppingComparisonRow row;
            row.rule = rule;
            row.eps_cg = eps_cg;
            SolverConfig cfg = base;
            cfg.eps_cg = eps_cg;
            cfg.stop_rule = rule;

            double log_time = 0.0, log_res = 0.0;
            std::size_t timed = 0;
            for (const auto& np : problems) {
                ++row.runs;
                try {
                    const auto run = run_projection(np.name, np.problem, cfg);
                    const auto& r = run.record;
                    row.total_matvecs += r.matvecs;
                    row.total_newton_iters += r.newton_iters;
                    if (r.status == "converged") ++row.converged;
                    // Floors keep a zero timing or residual from sinking the log mean.
                    const double t = std::max(r.wall_time, 1e-9);
                    const double res = std::max(r.residual_inf, 1e-300);
                    log_time += std::log(t);
                    log_res += std::log(res);
                    row.arith_mean_time += t;
                    row.arith_mean_residual += res;
                    ++timed;
                } catch (const std::exception& e) {
                    row.failures.push_back(np.name + ": " + e.what());
                }
            }
            if (timed > 0) {
                const double k = static_cast<double>(timed);
                row.geo_mean_time = std::exp(log_time / k);
                row.geo_mean_residual = std::exp(log_res / k);
                row.arith_mean_time /= k;
                row.arith_mean_residual /= k;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string comparison_tsv_header() {
    return "rule\teps_cg\tgeo_mean_time\tarith_mean_time\tgeo_mean_residual\t"
           "arith_mean_residual\ttotal_matvecs\ttotal_newton_iters\tconverged\truns";
}

std::string to_tsv_row(const StoppingComparisonRow& row) {
    std::ostringstream os;
    os.precision(6);
    os << to_string(row.rule) << '\t' << row.eps_cg << '\t' << row.geo_mean_time << '\t'
       << row.arith_mean_time << '\t' << row.geo_mean_residual << '\t'
       << row.arith_mean_residual << '\t' << row.total_matvecs << '\t'
       << row.total_newton_iters << '\t' << row.converged << '\t' << row.runs;
    return os.str();
}

}  // namespace pqn

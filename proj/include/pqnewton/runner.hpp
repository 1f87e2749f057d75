#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pqnewton/objective.hpp"
#include "pqnewton/run_record.hpp"

namespace pqn {

/// b = A x0 for a nonnegative x0 drawn from a seeded generator, so that
/// {x >= 0 : A x = b} is nonempty. Roughly a quarter of x0 is zero.
std::vector<double> feasible_rhs(const SparseMatrix& a, std::uint64_t seed);

/// Resolves a right-hand side source: "feasible:<seed>", a vector file path,
/// or "auto" for the "<stem>_b.txt" file next to the matrix.
std::vector<double> resolve_rhs(const SparseMatrix& a, const std::string& source,
                                const std::filesystem::path& matrix_path);

/// Random m x n matrix with about `density` m n entries, uniform in [-1, 1].
/// Every row and every column gets at least one entry.
SparseMatrix random_sparse(std::size_t m, std::size_t n, double density, std::uint64_t seed);

/// "zero" or a vector file path.
std::vector<double> resolve_xhat(std::size_t n, const std::string& source);

struct ProjectionRun {
    RunRecord record;
    NewtonReport report;
};

/// Solves the projection problem from p = 0 with the PCG oracle.
ProjectionRun run_projection(const std::string& name, const ProjectionProblem& prob,
                             const SolverConfig& config);

struct NamedProblem {
    std::string name;
    ProjectionProblem problem;
};

/// One row of the stopping-rule comparison: aggregate over every problem for
/// a (rule, eps_cg) pair.
struct StoppingComparisonRow {
    StopRule rule = StopRule::Both;
    double eps_cg = 0.0;
    double geo_mean_time = 0.0;
    double arith_mean_time = 0.0;
    double geo_mean_residual = 0.0;
    double arith_mean_residual = 0.0;
    std::uint64_t total_matvecs = 0;
    std::size_t total_newton_iters = 0;
    std::size_t converged = 0;
    std::size_t runs = 0;
    std::vector<std::string> failures;  ///< "name: message" for runs that threw
};

/// Runs every problem twice per eps_cg: standard residual rule only, then both
/// rules. Solver errors are recorded in the row instead of propagating.
std::vector<StoppingComparisonRow> compare_stopping(const std::vector<NamedProblem>& problems,
                                                    const std::vector<double>& eps_grid,
                                                    const SolverConfig& base);

/// Six bundled NETLIB matrices and four random sparse ones, each with a
/// feasible:<seed> right-hand side and xhat = 0. `data_dir` holds the .mtx
/// fixtures.
std::vector<NamedProblem> synthetic_suite(const std::filesystem::path& data_dir);

std::string comparison_tsv_header();
std::string to_tsv_row(const StoppingComparisonRow& row);

}  // namespace pqn

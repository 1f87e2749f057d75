// pqnewton: command-line front end for the projection and polyhedra-distance
// solvers.
//
// Exit status: 0 when every requested solve converged, 1 when at least one
// did not, 2 for bad input (usage errors, unreadable files, invalid config).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqnewton/matrix_market.hpp"
#include "pqnewton/polydist.hpp"
#include "pqnewton/run_record.hpp"
#include "pqnewton/runner.hpp"

namespace {

constexpr int kNotConverged = 1;
constexpr int kBadInput = 2;

// Flags override the config file, which overrides the defaults.
struct ConfigFlags {
    std::string config_path;
    std::optional<double> delta, eps, tau, eps_cg;
    std::optional<std::size_t> k_max, l_max, it_max;
    std::optional<std::string> stop_rule;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON file with solver settings")
            ->check(CLI::ExistingFile);
        app->add_option("--delta", delta, "regularization weight");
        app->add_option("--eps", eps, "relative gradient tolerance");
        app->add_option("--tau", tau, "Armijo slack");
        app->add_option("--eps-cg", eps_cg, "inner PCG tolerance");
        app->add_option("--kmax", k_max, "Newton iteration limit");
        app->add_option("--lmax", l_max, "line-search trial limit");
        app->add_option("--itmax", it_max, "PCG iteration limit (0 = min(m, 500))");
        app->add_option("--stop-rule", stop_rule, "PCG stopping rule")
            ->check(CLI::IsMember({"new", "old", "both", "standard"}));
    }

    pqn::SolverConfig resolve() const {
        pqn::SolverConfig c;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open " + config_path);
            pqn::apply_config_json(nlohmann::json::parse(in), c);
        }
        if (delta) c.delta = *delta;
        if (eps) c.eps = *eps;
        if (tau) c.tau = *tau;
        if (eps_cg) c.eps_cg = *eps_cg;
        if (k_max) c.k_max = *k_max;
        if (l_max) c.l_max = *l_max;
        if (it_max) c.it_max = *it_max;
        if (stop_rule) c.stop_rule = pqn::parse_stop_rule(*stop_rule);
        c.validate();
        return c;
    }
};

void emit_schema_line() { std::cout << "# schema_version=" << pqn::kSchemaVersion << '\n'; }

int cmd_project(const std::vector<std::string>& matrices, const std::string& b_source,
                const std::string& xhat_source, const std::string& format,
                const pqn::SolverConfig& cfg) {
    bool all_converged = true;
    if (format == "tsv") {
        emit_schema_line();
        std::cout << pqn::run_record_tsv_header() << '\n';
    }
    for (const auto& path : matrices) {
        auto a = pqn::read_matrix_market(path);
        auto b = pqn::resolve_rhs(a, b_source, path);
        auto xhat = pqn::resolve_xhat(a.cols(), xhat_source);
        const pqn::ProjectionProblem prob(std::move(a), std::move(b), std::move(xhat));
        const auto run = pqn::run_projection(std::filesystem::path(path).stem().string(), prob, cfg);
        if (format == "tsv") {
            std::cout << pqn::to_tsv_row(run.record) << '\n';
        } else {
            std::cout << pqn::to_json(run.record).dump(2) << '\n';
        }
        if (run.record.status != "converged") {
            std::cerr << "pqnewton: " << run.record.problem << ": " << run.record.status << '\n';
            all_converged = false;
        }
    }
    return all_converged ? 0 : kNotConverged;
}

int cmd_polydist(const std::vector<std::size_t>& sizes, double epsilon, const std::string& format,
                 const pqn::SolverConfig& cfg) {
    bool all_converged = true;
    if (format == "tsv") {
        emit_schema_line();
        std::cout << pqn::distance_tsv_header() << '\n';
    }
    for (std::size_t n : sizes) {
        const auto rep = pqn::solve_distance(pqn::generate_polyhedra(n), epsilon, cfg);
        if (format == "tsv") {
            std::cout << pqn::to_tsv_row(rep) << '\n';
        } else {
            std::cout << pqn::to_json(rep).dump(2) << '\n';
        }
        all_converged = all_converged && rep.status == pqn::NewtonStatus::Converged;
    }
    return all_converged ? 0 : kNotConverged;
}

int cmd_compare(const std::vector<std::string>& matrices, const std::string& suite_dir,
                const std::string& b_source, const std::vector<double>& grid,
                const pqn::SolverConfig& cfg) {
    std::vector<pqn::NamedProblem> problems;
    if (!suite_dir.empty()) problems = pqn::synthetic_suite(suite_dir);
    for (const auto& path : matrices) {
        auto a = pqn::read_matrix_market(path);
        auto b = pqn::resolve_rhs(a, b_source, path);
        const std::size_t n = a.cols();
        problems.push_back({std::filesystem::path(path).stem().string(),
                            pqn::ProjectionProblem(std::move(a), std::move(b),
                                                   std::vector<double>(n, 0.0))});
    }
    if (problems.empty()) throw CLI::ValidationError("compare-stopping", "no matrices given");

    const auto rows = pqn::compare_stopping(problems, grid, cfg);
    emit_schema_line();
    std::cout << pqn::comparison_tsv_header() << '\n';
    bool all_converged = true;
    for (const auto& row : rows) {
        std::cout << pqn::to_tsv_row(row) << '\n';
        for (const auto& f : row.failures) std::cerr << "pqnewton: " << f << '\n';
        all_converged = all_converged && row.converged == row.runs;
    }
    return all_converged ? 0 : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inexact Newton solver for NNLS projection and polyhedra distance"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string b_source = "auto";
    std::string xhat_source = "zero";

    auto* project = app.add_subcommand("project", "project xhat onto {x >= 0 : A x = b}");
    std::vector<std::string> proj_matrices;
    project->add_option("matrix", proj_matrices, "Matrix Market file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    project->add_option("--b", b_source, "vector file, feasible:SEED, or auto (<stem>_b.txt)");
    project->add_option("--xhat", xhat_source, "vector file or zero");
    project->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));
    ConfigFlags proj_flags;
    proj_flags.attach(project);

    auto* polydist = app.add_subcommand("polydist", "distance between quasirandom polyhedra");
    std::vector<std::size_t> sizes;
    double epsilon = 1e-4;
    std::string poly_format = "tsv";
    polydist->add_option("--n", sizes, "total face count(s), even and >= 8")
        ->required()
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                const auto v = std::stoull(s);
                if (v % 2 != 0 || v < 8) return "n must be even and at least 8, got " + s;
                return {};
            },
            "EVEN>=8"));
    polydist->add_option("--epsilon", epsilon, "penalty parameter")
        ->check(CLI::PositiveNumber);
    polydist->add_option("--format", poly_format)->check(CLI::IsMember({"json", "tsv"}));
    ConfigFlags poly_flags;
    poly_flags.attach(polydist);

    auto* compare = app.add_subcommand("compare-stopping",
                                       "standard vs cost-based PCG stopping over a problem set");
    std::vector<std::string> cmp_matrices;
    std::string suite_dir;
    std::vector<double> grid{1e-1, 1e-2, 1e-3, 1e-4};
    compare->add_option("matrix", cmp_matrices, "Matrix Market file(s)")
        ->check(CLI::ExistingFile);
    compare->add_option("--suite", suite_dir, "directory of bundled fixtures for the synthetic suite")
        ->check(CLI::ExistingDirectory);
    compare->add_option("--b", b_source, "vector file, feasible:SEED, or auto");
    compare->add_option("--eps-grid", grid, "eps_cg values")->delimiter(',');
    ConfigFlags cmp_flags;
    cmp_flags.attach(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version come through here with a zero code
        return app.exit(e) == 0 ? 0 : kBadInput;
    }

    try {
        if (*project) {
            return cmd_project(proj_matrices, b_source, xhat_source, format, proj_flags.resolve());
        }
        if (*polydist) return cmd_polydist(sizes, epsilon, poly_format, poly_flags.resolve());
        return cmd_compare(cmp_matrices, suite_dir, b_source, grid, cmp_flags.resolve());
    } catch (const CLI::Error& e) {
        std::cerr << "pqnewton: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "pqnewton: " << e.what() << '\n';
        return kBadInput;
    }
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pqnewton/matrix_market.hpp"
#include "pqnewton/polydist.hpp"
#include "pqnewton/run_record.hpp"
#include "pqnewton/runner.hpp"

namespace py = pybind11;
using namespace pqn;

namespace {

// Records cross the boundary as JSON text; the Python side parses them.
std::string project(const SparseMatrix& a, std::vector<double> b, std::vector<double> xhat,
                    const std::string& config_json) {
    SolverConfig cfg;
    if (!config_json.empty()) apply_config_json(nlohmann::json::parse(config_json), cfg);
    cfg.validate();
    if (xhat.empty()) xhat.assign(a.cols(), 0.0);
    const ProjectionProblem prob(a, std::move(b), std::move(xhat));
    const auto run = run_projection("python", prob, cfg);
    auto j = to_json(run.record);
    j["x"] = run.report.x_final;
    j["p"] = run.report.p_final;
    j["phi_history"] = run.report.phi_history;
    return j.dump();
}

std::string distance(std::size_t n, double epsilon) {
    return to_json(solve_distance(generate_polyhedra(n), epsilon)).dump();
}

}  // namespace

PYBIND11_MODULE(_pqnewton, m) {
    py::class_<SparseMatrix>(m, "SparseMatrix")
        .def_static(
            "from_triplets",
            [](std::size_t rows, std::size_t cols, const std::vector<std::size_t>& i,
               const std::vector<std::size_t>& j, const std::vector<double>& v) {
                if (i.size() != j.size() || i.size() != v.size())
                    throw std::invalid_argument("from_triplets: index and value lengths differ");
                std::vector<Triplet> t(i.size());
                for (std::size_t k = 0; k < t.size(); ++k) t[k] = {i[k], j[k], v[k]};
                return SparseMatrix::from_triplets(rows, cols, std::move(t));
            },
            py::arg("rows"), py::arg("cols"), py::arg("i"), py::arg("j"), py::arg("values"))
        .def_property_readonly("rows", &SparseMatrix::rows)
        .def_property_readonly("cols", &SparseMatrix::cols)
        .def_property_readonly("nnz", &SparseMatrix::nnz)
        .def("matvec", [](const SparseMatrix& a, const std::vector<double>& v) { return matvec(a, v); });

    m.def("read_matrix_market", [](const std::string& path) { return read_matrix_market(path); });
    m.def("read_vector", [](const std::string& path) { return read_vector(path); });
    m.def("feasible_rhs", &feasible_rhs, py::arg("a"), py::arg("seed"));
    m.def("_project", &project);
    m.def("_distance", &distance);

    py::register_exception<MatrixMarketError>(m, "MatrixMarketError", PyExc_ValueError);
}

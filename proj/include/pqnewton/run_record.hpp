#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"
#include "pqnewton/newton.hpp"
#include "pqnewton/polydist.hpp"

namespace pqn {

inline constexpr int kSchemaVersion = 1;

/// Summary of one projection solve as emitted by the CLI.
struct RunRecord {
    int schema_version = kSchemaVersion;
    std::string problem;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    SolverConfig config;
    double wall_time = 0.0;
    double residual_inf = 0.0;  ///< ||A x - b||_inf
    double residual_2 = 0.0;
    double x_norm = 0.0;
    std::size_t newton_iters = 0;
    std::uint64_t matvecs = 0;
    std::string status;
    std::map<std::string, std::size_t> pcg_stops;  ///< keyed by StopReason name

    bool operator==(const RunRecord&) const;
};

nlohmann::json config_to_json(const SolverConfig& c);
/// Overwrites the fields present in `j`; unknown keys are rejected.
void apply_config_json(const nlohmann::json& j, SolverConfig& c);

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

std::string run_record_tsv_header();
std::string to_tsv_row(const RunRecord& r);

nlohmann::json to_json(const DistanceReport& r);
std::string distance_tsv_header();
std::string to_tsv_row(const DistanceReport& r);

}  // namespace pqn

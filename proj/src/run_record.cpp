#include "pqnewton/run_record.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace pqn {
namespace {

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt_fixed(double v, int digits) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

std::string fmt_sci(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 2);
    return std::string(buf, ptr);
}

}  // namespace

bool RunRecord::operator==(const RunRecord& o) const {
    return to_json(*this) == to_json(o);
}

nlohmann::json config_to_json(const SolverConfig& c) {
    return {{"delta", c.delta},   {"eps", c.eps},     {"tau", c.tau},
            {"eps_cg", c.eps_cg}, {"k_max", c.k_max}, {"l_max", c.l_max},
            {"it_max", c.it_max}, {"stop_rule", std::string(to_string(c.stop_rule))}};
}

void apply_config_json(const nlohmann::json& j, SolverConfig& c) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "delta") c.delta = value.get<double>();
        else if (key == "eps") c.eps = value.get<double>();
        else if (key == "tau") c.tau = value.get<double>();
        else if (key == "eps_cg") c.eps_cg = value.get<double>();
        else if (key == "k_max") c.k_max = value.get<std::size_t>();
        else if (key == "l_max") c.l_max = value.get<std::size_t>();
        else if (key == "it_max") c.it_max = value.get<std::size_t>();
        else if (key == "stop_rule") c.stop_rule = parse_stop_rule(value.get<std::string>());
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

nlohmann::json to_json(const RunRecord& r) {
    return {{"schema_version", r.schema_version},
            {"problem", r.problem},
            {"rows", r.rows},
            {"cols", r.cols},
            {"nnz", r.nnz},
            {"config", config_to_json(r.config)},
            {"wall_time", r.wall_time},
            {"residual_inf", r.residual_inf},
            {"residual_2", r.residual_2},
            {"x_norm", r.x_norm},
            {"newton_iters", r.newton_iters},
            {"matvecs", r.matvecs},
            {"status", r.status},
            {"pcg_stops", r.pcg_stops}};
}

RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
        throw std::invalid_argument("run record: unsupported schema_version " +
                                    std::to_string(r.schema_version));
    }
    r.problem = j.at("problem").get<std::string>();
    r.rows = j.at("rows").get<std::size_t>();
    r.cols = j.at("cols").get<std::size_t>();
    r.nnz = j.at("nnz").get<std::size_t>();
    apply_config_json(j.at("config"), r.config);
    r.wall_time = j.at("wall_time").get<double>();
    r.residual_inf = j.at("residual_inf").get<double>();
    r.residual_2 = j.at("residual_2").get<double>();
    r.x_norm = j.at("x_norm").get<double>();
    r.newton_iters = j.at("newton_iters").get<std::size_t>();
    r.matvecs = j.at("matvecs").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    r.pcg_stops = j.at("pcg_stops").get<std::map<std::string, std::size_t>>();
    return r;
}

std::string run_record_tsv_header() {
    return "problem\trows\tcols\tnnz\tstatus\ttime_sec\tresidual_inf\tresidual_2\tx_norm\t"
           "newton_iters\tmatvecs\teps_cg\tstop_rule";
}

std::string to_tsv_row(const RunRecord& r) {
    std::ostringstream os;
    os << r.problem << '\t' << r.rows << '\t' << r.cols << '\t' << r.nnz << '\t' << r.status
       << '\t' << fmt(r.wall_time) << '\t' << fmt(r.residual_inf) << '\t' << fmt(r.residual_2)
       << '\t' << fmt(r.x_norm) << '\t' << r.newton_iters << '\t' << r.matvecs << '\t'
       << fmt(r.config.eps_cg) << '\t' << to_string(r.config.stop_rule);
    return os.str();
}

nlohmann::json to_json(const DistanceReport& r) {
    return {{"schema_version", kSchemaVersion},
            {"n", r.faces},
            {"distance", r.distance},
            {"constraint_violation", r.constraint_violation},
            {"time_sec", r.seconds},
            {"grad_norm_inf", r.grad_norm_inf},
            {"newton_iters", r.newton_iters},
            {"status", std::string(to_string(r.status))},
            {"x1", r.x1},
            {"x2", r.x2}};
}

std::string distance_tsv_header() {
    return "n\tdistance\tconstraint_violation\ttime_sec\tgrad_norm_inf\tnewton_iters\tstatus";
}

std::string to_tsv_row(const DistanceReport& r) {
    std::ostringstream os;
    os << r.faces << '\t' << fmt_fixed(r.distance, 6) << '\t' << fmt_sci(r.constraint_violation)
       << '\t' << fmt_fixed(r.seconds, 3) << '\t' << fmt_sci(r.grad_norm_inf) << '\t'
       << r.newton_iters << '\t' << to_string(r.status);
    return os.str();
}

}  // namespace pqn

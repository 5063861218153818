#include <json.hpp>

#include "ssqec/code.hpp"

namespace ssqec {

namespace {
nlohmann::json matrix_rows(const F2Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BitVec& r : m.rows) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < r.size(); ++c) row.push_back(r.get(c) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json pauli_list(const std::vector<PauliOp>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const PauliOp& p : v) out.push_back(p.to_string());
    return out;
}
} // namespace

std::string code_to_json(const StabilizerCode& code) {
    nlohmann::json j;
    j["family"] = family_name(code.family);
    j["size"] = code.size_param;
    j["n"] = code.n;
    j["checks"] = pauli_list(code.checks);
    j["gauge_gens"] = pauli_list(code.gauge_gens);
    nlohmann::json logicals = nlohmann::json::array();
    for (const auto& [lx, lz] : code.logical_reps)
        logicals.push_back({lx.to_string(), lz.to_string()});
    j["logical_reps"] = std::move(logicals);
    j["measured_ops"] = pauli_list(code.measured_ops);
    j["outcome_map"] = matrix_rows(code.outcome_map);
    j["metachecks"] = matrix_rows(code.metachecks);
    return j.dump(2);
}

} // namespace ssqec

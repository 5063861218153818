#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssqec/bounds.hpp"
#include "ssqec/code.hpp"
#include "ssqec/sim.hpp"
#include "ssqec/toml.hpp"
#include "ssqec/verify.hpp"

using namespace ssqec;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("[cli] cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("[cli] write failed for '" + path + "'");
}

NoiseKind noise_kind_from_name(const std::string& s) {
    if (s == "iid_local") return NoiseKind::iid_local;
    if (s == "fabrication") return NoiseKind::fabrication;
    if (s == "markov_walker") return NoiseKind::markov_walker;
    throw std::runtime_error("[config] unknown noise kind '" + s + "'");
}

PathFamily paths_from_name(const std::string& s) {
    if (s == "rows") return PathFamily::rows;
    if (s == "rows_and_cols") return PathFamily::rows_and_cols;
    throw std::runtime_error("[config] unknown path family '" + s + "'");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Reject keys outside the schema, naming the first offender and its line.
void reject_unknown(const TomlTable& t, const std::set<std::string>& known) {
    for (const std::string& k : t.keys())
        if (!known.count(k))
            throw std::runtime_error("[config] unknown key '" + k + "' (line " +
                                     std::to_string(t.get(k).line) + ")");
}

const std::set<std::string> sweep_schema = {
    "kind",
    "grid.family", "grid.sizes", "grid.lambdas", "grid.etas", "grid.rounds",
    "grid.trials", "grid.seed",
    "noise.kind", "noise.depolarize", "noise.q_fault", "noise.rho_spawn",
    "noise.paths",
    "output.csv", "output.dump",
    "bounds.enabled", "bounds.mode", "bounds.lambda0", "bounds.b", "bounds.i",
    "bounds.c", "bounds.j", "bounds.k", "bounds.tau0", "bounds.v1", "bounds.v2",
    "bounds.eta0", "bounds.K", "bounds.f3_scale", "bounds.f3_power",
    "bounds.f4_scale", "bounds.f4_power",
};

const std::set<std::string> verify_schema = {"kind", "seed", "output.report"};

ParameterFunctions bounds_from_config(const TomlTable& t) {
    ParameterFunctions pf;
    std::string mode = t.get_string("bounds.mode", "local_syndromes");
    if (mode == "local_noise")
        pf.mode = BoundMode::local_noise;
    else if (mode == "local_syndromes")
        pf.mode = BoundMode::local_syndromes;
    else
        throw std::runtime_error("[config] unknown bounds mode '" + mode + "'");
    pf.lambda0 = t.get_double("bounds.lambda0", pf.lambda0);
    pf.b = t.get_double("bounds.b", pf.b);
    pf.i = t.get_double("bounds.i", pf.i);
    pf.c = t.get_double("bounds.c", pf.c);
    pf.j = t.get_double("bounds.j", pf.j);
    pf.k = t.get_double("bounds.k", pf.k);
    pf.tau0 = t.get_double("bounds.tau0", pf.tau0);
    pf.v1 = t.get_double("bounds.v1", pf.v1);
    pf.v2 = t.get_double("bounds.v2", pf.v2);
    pf.eta0 = t.get_double("bounds.eta0", pf.eta0);
    pf.K = t.get_double("bounds.K", pf.K);
    pf.f3_scale = t.get_double("bounds.f3_scale", pf.f3_scale);
    pf.f3_power = t.get_double("bounds.f3_power", pf.f3_power);
    pf.f4_scale = t.get_double("bounds.f4_scale", pf.f4_scale);
    pf.f4_power = t.get_double("bounds.f4_power", pf.f4_power);
    validate(pf);
    return pf;
}

// The lambda grid drives the kind's primary rate: per-qubit X rate for
// iid_local, per-use rate on faulty qubits for fabrication, spawn rate for
// markov_walker.
std::vector<MemoryRunConfig> grid_from_config(const TomlTable& t) {
    CodeFamily family = family_from_name(t.get_string("grid.family"));
    std::vector<std::int64_t> sizes = t.get_int_array("grid.sizes");
    std::vector<double> lambdas =
        t.has("grid.lambdas") ? t.get_double_array("grid.lambdas") : std::vector<double>{0.0};
    std::vector<double> etas =
        t.has("grid.etas") ? t.get_double_array("grid.etas") : std::vector<double>{0.0};
    std::vector<std::int64_t> rounds = t.get_int_array("grid.rounds");
    std::int64_t trials = t.get_int("grid.trials");
    std::uint64_t seed = std::uint64_t(t.get_int("grid.seed", 2024));
    if (sizes.empty() || lambdas.empty() || etas.empty() || rounds.empty())
        throw std::runtime_error("[config] empty grid axis");
    if (trials < 1) throw std::runtime_error("[config] grid.trials must be at least 1");

    NoiseKind kind = noise_kind_from_name(t.get_string("noise.kind", "iid_local"));
    std::vector<MemoryRunConfig> grid;
    for (std::int64_t size : sizes)
        for (double lam : lambdas)
            for (double eta : etas)
                for (std::int64_t n : rounds) {
                    if (size < 2) throw std::runtime_error("[config] grid size below 2");
                    if (n < 1) throw std::runtime_error("[config] rounds below 1");
                    MemoryRunConfig cfg;
                    cfg.code_id = {family, std::size_t(size)};
                    cfg.noise.kind = kind;
                    cfg.noise.eta = eta;
                    cfg.noise.depolarize = t.get_bool("noise.depolarize", false);
                    switch (kind) {
                    case NoiseKind::iid_local: cfg.noise.lambda = lam; break;
                    case NoiseKind::fabrication:
                        cfg.noise.per_use = lam;
                        cfg.noise.q_fault = t.get_double("noise.q_fault");
                        break;
                    case NoiseKind::markov_walker:
                        cfg.noise.rho_spawn = lam;
                        cfg.noise.paths =
                            paths_from_name(t.get_string("noise.paths", "rows_and_cols"));
                        break;
                    }
                    cfg.noise.seed = seed;
                    cfg.rounds = std::uint32_t(n);
                    cfg.trials = std::uint64_t(trials);
                    cfg.seed = seed;
                    cfg.record_rounds = false;
                    grid.push_back(cfg);
                }
    return grid;
}

std::string augment_with_bounds(const std::string& csv, const std::vector<SweepRow>& rows,
                                const ParameterFunctions& pf) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::string out = line + ",tau1,tau2,delta1,delta2,delta3,bound\n";
    std::size_t i = 0;
    while (std::getline(in, line)) {
        const SweepRow& r = rows.at(i++);
        StabilizerCode code = build_code(r.code_id);
        WiredParameters wp = wire_parameters(pf, r.lambda, r.eta, code.n);
        double bound = lifetime_bound(r.rounds, wp.delta1, wp.delta2, wp.delta3);
        out += line + ',' + fmt17(wp.tau1) + ',' + fmt17(wp.tau2) + ',' + fmt17(wp.delta1) +
               ',' + fmt17(wp.delta2) + ',' + fmt17(wp.delta3) + ',' + fmt17(bound) + '\n';
    }
    return out;
}

int cmd_code_build(const std::string& family, std::int64_t size, const std::string& out_path) {
    StabilizerCode code = build_code({family_from_name(family), std::size_t(size)});
    std::string js = code_to_json(code);
    if (out_path.empty())
        std::printf("%s\n", js.c_str());
    else
        write_file(out_path, js + "\n");
    std::fprintf(stderr, "[code] built %s: n=%zu, %zu checks, %zu measured bits\n",
                 code.name().c_str(), code.n, code.n_checks(), code.measured_ops.size());
    return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& report_path) {
    std::vector<OracleReport> reports = verify_all(seed);
    bool all = true;
    for (const OracleReport& r : reports) {
        std::printf("%s  %-26s %s\n", r.pass ? "pass" : "FAIL", r.proposition.c_str(),
                    r.instance.c_str());
        if (!r.pass)
            std::printf("      lhs=%s rhs=%s %s\n", r.lhs.c_str(), r.rhs.c_str(),
                        r.witness.c_str());
        all = all && r.pass;
    }
    std::printf("[verify] %zu oracle reports, %s\n", reports.size(),
                all ? "all pass" : "FAILURES PRESENT");
    if (!report_path.empty()) write_file(report_path, reports_to_json(reports) + "\n");
    return all ? 0 : 1;
}

int cmd_sweep(const TomlTable& t, const std::string& out_override) {
    reject_unknown(t, sweep_schema);
    std::string out_path = !out_override.empty() ? out_override
                                                 : t.get_string("output.csv", "");
    if (out_path.empty())
        throw std::runtime_error("[config] missing key 'output.csv' (or pass --out)");
    bool with_bounds = t.get_bool("bounds.enabled", false);
    ParameterFunctions pf;
    if (with_bounds) pf = bounds_from_config(t);

    std::vector<MemoryRunConfig> grid = grid_from_config(t);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    // flush after every grid point so long sweeps leave partial tables
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<SweepRow> one = sweep({grid[g]});
        rows.push_back(one.front());
        std::string csv = sweep_csv(rows);
        if (with_bounds) csv = augment_with_bounds(csv, rows, pf);
        write_file(out_path, csv);
        const SweepRow& r = rows.back();
        std::fprintf(stderr, "[sweep] %zu/%zu %s L=%zu lambda=%g eta=%g n=%u fail=%g\n",
                     g + 1, grid.size(), family_name(r.code_id.family).c_str(),
                     r.code_id.size, r.lambda, r.eta, r.rounds, r.est.mean);
    }
    std::printf("[sweep] wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    return 0;
}

int cmd_record(const TomlTable& t, const std::string& out_override) {
    reject_unknown(t, sweep_schema);
    std::string out_path = !out_override.empty() ? out_override
                                                 : t.get_string("output.dump", "");
    if (out_path.empty())
        throw std::runtime_error("[config] missing key 'output.dump' (or pass --out)");
    std::vector<MemoryRunConfig> grid = grid_from_config(t);
    if (grid.size() != 1)
        throw std::runtime_error("[config] trajectory recording needs a single grid point, got " +
                                 std::to_string(grid.size()));
    MemoryRunConfig cfg = grid.front();
    cfg.record_rounds = true;
    StabilizerCode code = build_code(cfg.code_id);
    std::vector<Trajectory> trajs = collect_trajectories(cfg, code);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("[cli] cannot write '" + out_path + "'");
    dump_trajectories(out, cfg, trajs);
    std::printf("[record] wrote %zu trajectories to %s\n", trajs.size(), out_path.c_str());
    return 0;
}

int cmd_replay(const std::string& dump_path) {
    std::ifstream in(dump_path, std::ios::binary);
    if (!in) throw std::runtime_error("[cli] cannot open '" + dump_path + "'");
    std::size_t n = replay_trajectories(in);
    std::printf("[replay] %zu trajectories match\n", n);
    return 0;
}

int cmd_run(const std::string& cfg_path, const std::string& out_override) {
    TomlTable t = parse_toml_file(cfg_path);
    std::string kind = t.get_string("kind");
    if (kind == "verify") {
        reject_unknown(t, verify_schema);
        return cmd_verify(std::uint64_t(t.get_int("seed", 2024)),
                          !out_override.empty() ? out_override
                                                : t.get_string("output.report", "report.json"));
    }
    if (kind == "memory_sweep") return cmd_sweep(t, out_override);
    if (kind == "record") return cmd_record(t, out_override);
    throw std::runtime_error("[config] unknown experiment kind '" + kind + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic-channel calculus and single-shot quantum memory simulator"};
    app.require_subcommand(1);

    auto* code_cmd = app.add_subcommand("code", "stabilizer code utilities");
    code_cmd->require_subcommand(1);
    auto* code_build = code_cmd->add_subcommand("build", "build a code, print its description");
    std::string cb_family;
    std::int64_t cb_size = 0;
    std::string cb_out;
    code_build->add_option("family", cb_family, "repetition | toric2d | toric3d_z")->required();
    code_build->add_option("size", cb_size, "qubit count (repetition) or lattice side")
        ->required();
    code_build->add_option("--out", cb_out, "write the JSON description to this path");

    auto* verify_cmd = app.add_subcommand("verify", "oracle suites");
    verify_cmd->require_subcommand(1);
    auto* verify_all_cmd =
        verify_cmd->add_subcommand("all", "run every proposition oracle once");
    std::uint64_t va_seed = 2024;
    std::string va_report;
    verify_all_cmd->add_option("--seed", va_seed, "root seed for randomized instances");
    verify_all_cmd->add_option("--report", va_report, "write the JSON report to this path");

    auto* memory_cmd = app.add_subcommand("memory", "quantum memory simulations");
    memory_cmd->require_subcommand(1);
    auto* sweep_cmd = memory_cmd->add_subcommand("sweep", "run a failure-rate sweep");
    std::string ms_cfg, ms_out;
    sweep_cmd->add_option("config", ms_cfg, "experiment config (.toml)")->required();
    sweep_cmd->add_option("--out", ms_out, "override the configured CSV path");
    auto* record_cmd = memory_cmd->add_subcommand("record", "record a trajectory dump");
    std::string mr_cfg, mr_out;
    record_cmd->add_option("config", mr_cfg, "experiment config (.toml)")->required();
    record_cmd->add_option("--out", mr_out, "override the configured dump path");

    auto* replay_cmd = app.add_subcommand("replay", "re-run a trajectory dump and compare");
    std::string rp_dump;
    replay_cmd->add_option("dump", rp_dump, "trajectory dump (.jsonl)")->required();

    auto* run_cmd = app.add_subcommand("run", "run an experiment config file");
    std::string rn_cfg, rn_out;
    run_cmd->add_option("config", rn_cfg, "experiment config (.toml)")->required();
    run_cmd->add_option("--out", rn_out, "override the configured output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (code_build->parsed()) return cmd_code_build(cb_family, cb_size, cb_out);
        if (verify_all_cmd->parsed()) return cmd_verify(va_seed, va_report);
        if (sweep_cmd->parsed()) {
            TomlTable t = parse_toml_file(ms_cfg);
            std::string kind = t.get_string("kind", "memory_sweep");
            if (kind != "memory_sweep")
                throw std::runtime_error("[config] expected kind 'memory_sweep', found '" +
                                         kind + "'");
            return cmd_sweep(t, ms_out);
        }
        if (record_cmd->parsed()) {
            TomlTable t = parse_toml_file(mr_cfg);
            std::string kind = t.get_string("kind", "record");
            if (kind != "record" && kind != "memory_sweep")
                throw std::runtime_error("[config] expected kind 'record', found '" + kind +
                                         "'");
            return cmd_record(t, mr_out);
        }
        if (replay_cmd->parsed()) return cmd_replay(rp_dump);
        if (run_cmd->parsed()) return cmd_run(rn_cfg, rn_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
    return 0;
}

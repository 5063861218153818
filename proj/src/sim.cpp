#include "ssqec/sim.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

namespace ssqec {

void validate_config(const MemoryRunConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("[sim] rounds must be at least 1");
    if (cfg.trials < 1) throw std::invalid_argument("[sim] trials must be at least 1");
    validate_spec(cfg.noise, build_code(cfg.code_id));
}

FailureEstimate wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    FailureEstimate est;
    est.failures = failures;
    est.trials = trials;
    const double n = double(trials);
    const double p = double(failures) / n;
    const double z = 1.959963984540054; // 97.5th normal percentile
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.mean = p;
    est.lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    est.hi = failures == trials ? 1.0 : std::min(1.0, center + half);
    return est;
}

Trajectory run_trial(const MemoryRunConfig& cfg, const StabilizerCode& code,
                     std::uint64_t trial, const PauliOp& initial_frame) {
    CounterRng rng(cfg.seed, noise_stream_main);
    AdversaryState state;
    PauliOp frame = initial_frame;
    Trajectory tr;
    if (cfg.record_rounds) tr.rounds.reserve(cfg.rounds);

    for (std::uint32_t r = 0; r < cfg.rounds; ++r) {
        frame = mul(sample_data_noise(cfg.noise, code, state, rng, trial, r), frame);
        BitVec x = valid_outcome(code, frame);
        x ^= sample_measurement_flips(cfg.noise, code, state, rng, trial, r);
        const std::uint32_t observed = std::uint32_t(x.count());
        BitVec sigma_hat = syndrome_repair(code, x);
        PauliOp corr = correction(code, sigma_hat);
#ifndef NDEBUG
        BitVec before = syndrome(code, frame);
#endif
        frame = mul(corr, frame);
#ifndef NDEBUG
        before ^= syndrome(code, corr);
        assert(syndrome(code, frame) == before);
#endif
        if (cfg.record_rounds)
            tr.rounds.push_back({std::uint32_t(frame.weight()), observed,
                                 std::uint32_t(syndrome(code, frame).count())});
    }
    tr.failed = !is_correctable(code, frame);
    return tr;
}

Trajectory run_trial(const MemoryRunConfig& cfg, const StabilizerCode& code,
                     std::uint64_t trial) {
    return run_trial(cfg, code, trial, PauliOp::identity(code.n));
}

std::size_t worker_count() {
    const char* env = std::getenv("SSQEC_WORKERS");
    if (!env) return 1;
    char* end = nullptr;
    unsigned long w = std::strtoul(env, &end, 10);
    if (end == env || w < 1) return 1;
    return std::min<unsigned long>(w, 64);
}

FailureEstimate estimate_failure(const MemoryRunConfig& cfg) {
    validate_config(cfg);
    const StabilizerCode code = build_code(cfg.code_id);
    MemoryRunConfig light = cfg;
    light.record_rounds = false;

    const std::size_t workers = worker_count();
    const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
    std::vector<std::uint64_t> fails(workers, 0);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            std::uint64_t local = 0;
            for (std::uint64_t t = lo; t < hi; ++t)
                if (run_trial(light, code, t).failed) ++local;
            fails[w] = local;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (std::uint64_t f : fails) total += f;
    return wilson_interval(total, cfg.trials);
}

std::vector<Trajectory> collect_trajectories(const MemoryRunConfig& cfg,
                                             const StabilizerCode& code) {
    validate_config(cfg);
    std::vector<Trajectory> out;
    out.reserve(cfg.trials);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) out.push_back(run_trial(cfg, code, t));
    return out;
}

std::vector<double> residual_syndrome_density(const std::vector<Trajectory>& trajs,
                                              const StabilizerCode& code) {
    if (trajs.empty()) return {};
    const std::size_t rounds = trajs[0].rounds.size();
    std::vector<std::uint64_t> sums(rounds, 0);
    for (const auto& tr : trajs) {
        if (tr.rounds.size() != rounds)
            throw std::invalid_argument("[sim] trajectories have unequal lengths");
        for (std::size_t r = 0; r < rounds; ++r) sums[r] += tr.rounds[r].repaired_weight;
    }
    std::vector<double> out(rounds);
    const double norm = double(trajs.size()) * double(code.n_checks());
    for (std::size_t r = 0; r < rounds; ++r) out[r] = double(sums[r]) / norm;
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double sweep_lambda(const NoiseModelSpec& s) {
    switch (s.kind) {
        case NoiseKind::iid_local: return s.lambda;
        case NoiseKind::fabrication: return s.q_fault * s.per_use;
        case NoiseKind::markov_walker: return s.rho_spawn;
    }
    return 0.0;
}

} // namespace

std::vector<SweepRow> sweep(const std::vector<MemoryRunConfig>& grid) {
    if (grid.empty()) throw std::invalid_argument("[sim] empty sweep grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const auto& cfg : grid) {
        SweepRow row;
        row.code_id = cfg.code_id;
        row.lambda = sweep_lambda(cfg.noise);
        row.eta = cfg.noise.eta;
        row.rounds = cfg.rounds;
        row.trials = cfg.trials;
        row.est = estimate_failure(cfg);
        row.seed = cfg.seed;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "family,L,lambda,eta,n,trials,fail_mean,fail_lo,fail_hi,seed\n";
    for (const auto& r : rows) {
        out += family_name(r.code_id.family);
        out += ',' + std::to_string(r.code_id.size);
        out += ',' + fmt_double(r.lambda);
        out += ',' + fmt_double(r.eta);
        out += ',' + std::to_string(r.rounds);
        out += ',' + std::to_string(r.trials);
        out += ',' + fmt_double(r.est.mean);
        out += ',' + fmt_double(r.est.lo);
        out += ',' + fmt_double(r.est.hi);
        out += ',' + std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json spec_to_json(const NoiseModelSpec& s) {
    nlohmann::json j;
    switch (s.kind) {
        case NoiseKind::iid_local: j["kind"] = "iid_local"; break;
        case NoiseKind::fabrication: j["kind"] = "fabrication"; break;
        case NoiseKind::markov_walker: j["kind"] = "markov_walker"; break;
    }
    j["lambda"] = s.lambda;
    j["eta"] = s.eta;
    j["q_fault"] = s.q_fault;
    j["per_use"] = s.per_use;
    j["rho_spawn"] = s.rho_spawn;
    j["paths"] = s.paths == PathFamily::rows ? "rows" : "rows_and_cols";
    j["depolarize"] = s.depolarize;
    return j;
}

NoiseModelSpec spec_from_json(const nlohmann::json& j) {
    NoiseModelSpec s;
    const std::string kind = j.at("kind");
    if (kind == "iid_local")
        s.kind = NoiseKind::iid_local;
    else if (kind == "fabrication")
        s.kind = NoiseKind::fabrication;
    else if (kind == "markov_walker")
        s.kind = NoiseKind::markov_walker;
    else
        throw std::invalid_argument("[sim] unknown noise kind in dump: " + kind);
    s.lambda = j.at("lambda");
    s.eta = j.at("eta");
    s.q_fault = j.at("q_fault");
    s.per_use = j.at("per_use");
    s.rho_spawn = j.at("rho_spawn");
    s.paths = j.at("paths") == "rows" ? PathFamily::rows : PathFamily::rows_and_cols;
    s.depolarize = j.at("depolarize");
    return s;
}

} // namespace

void dump_trajectories(std::ostream& os, const MemoryRunConfig& cfg,
                       const std::vector<Trajectory>& trajs) {
    nlohmann::json meta;
    meta["family"] = family_name(cfg.code_id.family);
    meta["L"] = cfg.code_id.size;
    meta["noise"] = spec_to_json(cfg.noise);
    meta["rounds"] = cfg.rounds;
    meta["trials"] = trajs.size();
    meta["seed"] = cfg.seed;
    os << meta.dump() << '\n';
    for (std::size_t t = 0; t < trajs.size(); ++t) {
        nlohmann::json j;
        j["trial"] = t;
        j["failed"] = trajs[t].failed;
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : trajs[t].rounds)
            recs.push_back({r.residual_weight, r.observed_weight, r.repaired_weight});
        j["records"] = recs;
        os << j.dump() << '\n';
    }
}

std::size_t replay_trajectories(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("[sim] empty trajectory dump");
    nlohmann::json meta = nlohmann::json::parse(line);
    MemoryRunConfig cfg;
    cfg.code_id = {family_from_name(meta.at("family")), meta.at("L")};
    cfg.noise = spec_from_json(meta.at("noise"));
    cfg.rounds = meta.at("rounds");
    cfg.trials = std::max<std::uint64_t>(1, meta.at("trials").get<std::uint64_t>());
    cfg.seed = meta.at("seed");
    const StabilizerCode code = build_code(cfg.code_id);

    std::size_t matched = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        const std::uint64_t t = j.at("trial");
        Trajectory fresh = run_trial(cfg, code, t);
        if (fresh.failed != j.at("failed").get<bool>())
            throw std::runtime_error("[sim] replay mismatch: failure flag of trial " +
                                     std::to_string(t));
        const auto& recs = j.at("records");
        if (recs.size() != fresh.rounds.size())
            throw std::runtime_error("[sim] replay mismatch: round count of trial " +
                                     std::to_string(t));
        for (std::size_t r = 0; r < fresh.rounds.size(); ++r) {
            RoundRecord got{recs[r][0], recs[r][1], recs[r][2]};
            if (!(got == fresh.rounds[r]))
                throw std::runtime_error("[sim] replay mismatch: trial " + std::to_string(t) +
                                         " round " + std::to_string(r));
        }
        ++matched;
    }
    return matched;
}

} // namespace ssqec

// Product acceptance gate: ten criteria spanning the exact oracle suite and
// the Monte Carlo memory simulator.  One PASS/FAIL line per criterion; the
// process exits nonzero if any criterion fails or overruns its time cap.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ssqec/bounds.hpp"
#include "ssqec/channel.hpp"
#include "ssqec/code.hpp"
#include "ssqec/sim.hpp"
#include "ssqec/verify.hpp"

namespace {

using ssqec::BitVec;
using ssqec::build_code;
using ssqec::CodeFamily;
using ssqec::CounterRng;
using ssqec::FaultAtom;
using ssqec::JointFaultDistribution;
using ssqec::MemoryRunConfig;
using ssqec::NoiseKind;
using ssqec::OracleReport;
using ssqec::PauliOp;
using ssqec::StabilizerCode;
using ssqec::StochasticChannel;
using Q = mpq_class;

struct CritResult {
    bool pass = false;
    std::string detail;
};

BitVec mask_bits(std::size_t n, std::uint64_t mask) {
    BitVec v(n);
    for (std::size_t i = 0; i < n && i < 64; ++i)
        if ((mask >> i) & 1) v.set(i, true);
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- criterion 1: replacing a measured recovery round by its effective
// correction channel is within the composed failure rate, on >= 100
// randomized coupled (recovery, noise) instances over both repetition codes.
CritResult crit_recovery_replacement() {
    CounterRng rng(31337, 0);
    StabilizerCode rep3 = build_code({CodeFamily::repetition, 3});
    StabilizerCode rep5 = build_code({CodeFamily::repetition, 5});
    const Q lams[3] = {Q(1, 10), Q(1, 20), Q(3, 20)};
    std::size_t done = 0, bad = 0;
    std::string first;
    auto batch = [&](const StabilizerCode& code, std::size_t n_bits, std::size_t n_qubits,
                     std::uint64_t base) {
        for (std::size_t i = 0; i < 50; ++i) {
            std::uint64_t t = base + i;
            auto j = ssqec::product_coupling(ssqec::random_flip_distribution(n_bits, rng, t),
                                             ssqec::random_local_channel(n_qubits, lams[i % 3],
                                                                         rng, t));
            ssqec::random_shuffles(j.weight, 4 + i % 5, rng, t);
            OracleReport r = ssqec::check_recovery_replacement(code, j, code.name());
            ++done;
            if (!r.pass) {
                ++bad;
                if (first.empty())
                    first = code.name() + " instance " + std::to_string(i) + " lhs=" + r.lhs +
                            " rhs=" + r.rhs;
            }
        }
    };
    batch(rep3, rep3.n_checks(), 3, 1000);
    batch(rep5, rep5.n_checks(), 5, 2000);
    CritResult res;
    res.pass = bad == 0 && done >= 100;
    res.detail = std::to_string(done) + " randomized coupled instances, " + std::to_string(bad) +
                 " violations" + (first.empty() ? "" : "; first: " + first);
    return res;
}

// --- criterion 2: 10^4 coupled two-round joints with certified marginals
// respect both composition classes; the pair-concentrated family stays within
// a constant of the interleaved bound.
CritResult crit_composition() {
    struct Cell {
        std::size_t n;
        Q la, lb;
    };
    const Cell cells[5] = {{2, Q(1, 100), Q(1, 100)},
                           {3, Q(1, 100), Q(1, 50)},
                           {4, Q(1, 50), Q(1, 50)},
                           {5, Q(3, 200), Q(1, 100)},
                           {6, Q(1, 100), Q(1, 100)}};
    std::size_t total = 0, bad = 0;
    std::string tightness;
    for (const Cell& c : cells) {
        OracleReport r = ssqec::check_composition_bounds(c.n, c.la, c.lb, 2000, 9000 + c.n);
        total += 2000;
        if (!r.pass) ++bad;
        if (c.n == 2) tightness = r.witness.substr(0, r.witness.find(';'));
        if (!r.pass && tightness.find("violation") == std::string::npos)
            tightness += "; " + r.witness;
    }
    CritResult res;
    res.pass = bad == 0;
    res.detail = std::to_string(total) + " coupled joints across 2..6 qubits, " +
                 std::to_string(bad) + " failing cells; " + tightness;
    return res;
}

// --- criterion 3: three-round interleaved composition is bracketing
// independent, in exact rationals.  Two exhaustive families:
//  (a) every multiset of four three-round fault paths over {I, X_1, Z_2}
//      (weights 1/2, 1/4, 1/8, 1/8), through the full joint oracle;
//  (b) every per-atom operator pattern of a three-round product joint with
//      four atoms per round, dual-bracketed by exact convolution, with the
//      full joint oracle sampled along the way.
CritResult crit_associativity() {
    StabilizerCode rep2 = build_code({CodeFamily::repetition, 2});
    const Q w4[4] = {Q(1, 2), Q(1, 4), Q(1, 8), Q(1, 8)};

    // the 27 three-round paths over {I, X_1, Z_2}
    PauliOp alphabet[3] = {PauliOp::identity(2), PauliOp::single_x(2, 0),
                           PauliOp::single_z(2, 1)};
    std::vector<std::array<int, 3>> paths;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) paths.push_back({a, b, c});

    std::size_t done = 0, bad = 0;
    std::string first;
    auto note = [&](const std::string& what) {
        ++bad;
        if (first.empty()) first = what;
    };

    // (a) correlated joints: four paths, chosen with repetition
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i; j < paths.size(); ++j)
            for (std::size_t k = j; k < paths.size(); ++k)
                for (std::size_t l = k; l < paths.size(); ++l) {
                    JointFaultDistribution<Q> joint;
                    joint.rounds = 3;
                    const std::size_t pick[4] = {i, j, k, l};
                    for (int ai = 0; ai < 4; ++ai) {
                        FaultAtom<Q> atom;
                        atom.p = w4[ai];
                        for (int r = 0; r < 3; ++r)
                            atom.path.emplace_back(alphabet[paths[pick[ai]][r]], BitVec(1));
                        joint.atoms.push_back(std::move(atom));
                    }
                    OracleReport r = ssqec::check_associativity(rep2, joint, "");
                    ++done;
                    if (!r.pass)
                        note("correlated joint (" + std::to_string(i) + "," + std::to_string(j) +
                             "," + std::to_string(k) + "," + std::to_string(l) + ") disc=" +
                             r.lhs);
                }

    // (b) product joints: four atoms per round, each atom's operator free.
    // Operators live in the four-element group {I, X_1, Z_2, X_1 Z_2};
    // convolution over its two index bits is the exact composition.
    using Map4 = std::array<Q, 4>;
    auto conv = [](const Map4& a, const Map4& b) {
        Map4 out{Q(0), Q(0), Q(0), Q(0)};
        for (int i = 0; i < 4; ++i) {
            if (sgn(a[i]) == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (sgn(b[j]) == 0) continue;
                out[i ^ j] += a[i] * b[j];
            }
        }
        return out;
    };
    const int npat = 81; // atom operator choices per round, 3^4
    std::vector<Map4> round_map(npat, Map4{Q(0), Q(0), Q(0), Q(0)});
    for (int p = 0; p < npat; ++p) {
        int d = p;
        for (int ai = 0; ai < 4; ++ai) {
            int op = d % 3;
            d /= 3;
            round_map[p][op == 0 ? 0 : (op == 1 ? 1 : 2)] += w4[ai];
        }
    }
    std::vector<Map4> pair_conv(npat * npat);
    for (int p = 0; p < npat; ++p)
        for (int q = 0; q < npat; ++q) pair_conv[p * npat + q] = conv(round_map[p], round_map[q]);

    std::size_t lib_checked = 0;
    std::size_t idx = 0;
    for (int p1 = 0; p1 < npat; ++p1)
        for (int p2 = 0; p2 < npat; ++p2) {
            const Map4& left = pair_conv[p1 * npat + p2];
            for (int p3 = 0; p3 < npat; ++p3, ++idx) {
                Map4 a = conv(left, round_map[p3]);
                Map4 b = conv(round_map[p1], pair_conv[p2 * npat + p3]);
                ++done;
                if (a != b) {
                    note("product pattern (" + std::to_string(p1) + "," + std::to_string(p2) +
                         "," + std::to_string(p3) + ") bracketings differ");
                    continue;
                }
                if (idx % 5000 == 0) {
                    // rebuild the explicit 64-atom joint and run the full oracle
                    JointFaultDistribution<Q> joint;
                    joint.rounds = 3;
                    const int pats[3] = {p1, p2, p3};
                    int digits[3][4];
                    for (int r = 0; r < 3; ++r) {
                        int d = pats[r];
                        for (int ai = 0; ai < 4; ++ai) {
                            digits[r][ai] = d % 3;
                            d /= 3;
                        }
                    }
                    for (int a1 = 0; a1 < 4; ++a1)
                        for (int a2 = 0; a2 < 4; ++a2)
                            for (int a3 = 0; a3 < 4; ++a3) {
                                FaultAtom<Q> atom;
                                atom.p = w4[a1] * w4[a2] * w4[a3];
                                atom.path.emplace_back(alphabet[digits[0][a1]], BitVec(1));
                                atom.path.emplace_back(alphabet[digits[1][a2]], BitVec(1));
                                atom.path.emplace_back(alphabet[digits[2][a3]], BitVec(1));
                                joint.atoms.push_back(std::move(atom));
                            }
                    OracleReport r = ssqec::check_associativity(rep2, joint, "");
                    ++lib_checked;
                    if (!r.pass)
                        note("product pattern (" + std::to_string(p1) + "," +
                             std::to_string(p2) + "," + std::to_string(p3) +
                             ") full oracle disc=" + r.lhs);
                }
            }
        }

    CritResult res;
    res.pass = bad == 0;
    res.detail = std::to_string(done) + " joints exact-equal (" +
                 std::to_string(lib_checked) + " re-run through the full joint oracle), " +
                 std::to_string(bad) + " violations" +
                 (first.empty() ? "" : "; first: " + first);
    return res;
}

// --- criterion 4: syndrome repair is linear in the measurement flips on
// every built family; exhaustive single/double flips, 10^3 random errors on
// the three-dimensional code.
CritResult crit_repair_linearity() {
    struct Row {
        CodeFamily family;
        std::size_t size;
        std::size_t random_errors;
    };
    const Row rows[6] = {{CodeFamily::repetition, 2, 200},  {CodeFamily::repetition, 3, 200},
                         {CodeFamily::repetition, 5, 200},  {CodeFamily::toric2d, 2, 200},
                         {CodeFamily::toric2d, 3, 200},     {CodeFamily::toric3d_z, 2, 1000}};
    std::size_t bad = 0;
    std::string first;
    std::string covered;
    for (const Row& row : rows) {
        StabilizerCode code = build_code({row.family, row.size});
        OracleReport r = ssqec::check_repair_linearity(code, 2, row.random_errors, 4242);
        if (!r.pass) {
            ++bad;
            if (first.empty()) first = code.name() + ": " + r.witness;
        }
        covered += (covered.empty() ? "" : ", ") + code.name();
    }
    CritResult res;
    res.pass = bad == 0;
    res.detail = "families " + covered + "; " + std::to_string(bad) + " violations" +
                 (first.empty() ? "" : "; first: " + first);
    return res;
}

// --- criterion 5: syndrome-class assignment identities, exhaustive over all
// Pauli pairs on both repetition codes, plus the table-projection
// approximation on full-group channels and its exactly tight instance.
CritResult crit_assignment_projection() {
    StabilizerCode rep3 = build_code({CodeFamily::repetition, 3});
    StabilizerCode rep5 = build_code({CodeFamily::repetition, 5});
    std::size_t bad = 0;
    std::string first;
    auto take = [&](const OracleReport& r, const std::string& what) {
        if (!r.pass) {
            ++bad;
            if (first.empty()) first = what + " lhs=" + r.lhs + " rhs=" + r.rhs;
        }
    };

    take(ssqec::check_syndrome_assignment(rep3, 0, 0), "assignment repetition-3");
    take(ssqec::check_syndrome_assignment(rep5, 0, 0), "assignment repetition-5");

    auto full_group = [](const StabilizerCode& code) {
        std::uint64_t side = std::uint64_t(1) << code.n;
        std::uint64_t count = side * side;
        Q total = Q(count) * Q(count + 1) / 2;
        StochasticChannel<Q> ch;
        std::uint64_t i = 0;
        for (std::uint64_t xm = 0; xm < side; ++xm)
            for (std::uint64_t zm = 0; zm < side; ++zm) {
                ++i;
                ch.entries.push_back(
                    {Q(i) / total, PauliOp{mask_bits(code.n, xm), mask_bits(code.n, zm)}});
            }
        return ch;
    };
    take(ssqec::check_projection_approximation(rep3, full_group(rep3), "full group"),
         "projection repetition-3 full group");
    take(ssqec::check_projection_approximation(rep5, full_group(rep5), "full group"),
         "projection repetition-5 full group");

    StochasticChannel<Q> tight;
    tight.entries.push_back({Q(9, 10), PauliOp::identity(3)});
    tight.entries.push_back({Q(1, 10), PauliOp::parse("XXX")});
    OracleReport tr = ssqec::check_projection_approximation(rep3, tight, "tight");
    take(tr, "projection tight instance");
    bool exact_tight = tr.lhs == "1/10" && tr.rhs == "1/10";
    if (!exact_tight) {
        ++bad;
        if (first.empty())
            first = "tight instance not exactly 1/10: lhs=" + tr.lhs + " rhs=" + tr.rhs;
    }

    CritResult res;
    res.pass = bad == 0;
    res.detail = "exhaustive pair identities (4096 + 1048576 pairs), full-group projections, "
                 "tight distance = failure = 1/10: " +
                 std::string(exact_tight ? "exact" : "MISSED") +
                 (first.empty() ? "" : "; first: " + first);
    return res;
}

// --- criterion 6: the exhaustive failure-structure search on repetition-3
// finds exactly the two-check cover and its bound dominates the exact
// worst-coupling composed failure at tau = 1/100.
CritResult crit_structured_bound() {
    StabilizerCode rep3 = build_code({CodeFamily::repetition, 3});
    ssqec::StructuredFailure sf = ssqec::find_structured_failure_bound(rep3, Q(1, 100));
    bool shape = sf.m == 2 && sf.cover.size() == 1 && sf.cover[0].count() == 2 &&
                 sf.cover[0].get(0) && sf.cover[0].get(1);
    bool exact = sf.exact_fail == Q(199, 10000);
    CritResult res;
    res.pass = shape && exact && sf.report.pass;
    res.detail = "m=" + std::to_string(sf.m) + ", |B|=" + std::to_string(sf.cover.size()) +
                 ", worst-coupling failure " + sf.report.lhs + " <= bound " + sf.report.rhs +
                 (shape ? "" : "; cover shape unexpected") +
                 (exact ? "" : "; exact failure unexpected");
    return res;
}

struct DensityCI {
    double mean = 0.0, lo = 0.0, hi = 0.0;
};

DensityCI final_density_ci(std::uint32_t rounds, double eta, std::uint64_t seed,
                           std::uint64_t trials) {
    MemoryRunConfig cfg;
    cfg.code_id = {CodeFamily::toric3d_z, 3};
    cfg.noise.kind = NoiseKind::iid_local;
    cfg.noise.lambda = 0.01;
    cfg.noise.eta = eta;
    cfg.rounds = rounds;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.record_rounds = true;
    StabilizerCode code = build_code(cfg.code_id);
    auto trajs = ssqec::collect_trajectories(cfg, code);
    const double nc = double(code.n_checks());
    double s = 0.0, s2 = 0.0;
    for (const auto& t : trajs) {
        double d = double(t.rounds.back().repaired_weight) / nc;
        s += d;
        s2 += d * d;
    }
    const double n = double(trials);
    const double mean = s / n;
    const double var = (s2 - n * mean * mean) / (n - 1.0);
    const double se = std::sqrt(var / n);
    return {mean, mean - 1.96 * se, mean + 1.96 * se};
}

// --- criterion 7: single-shot behavior — the residual syndrome density on
// the three-dimensional code is stationary in the round count (overlapping
// 95% CIs at 10 vs 100 rounds) and strictly decreases when the measurement
// flip rate is halved.
CritResult crit_stationary_density() {
    DensityCI a = final_density_ci(10, 0.01, 11, 2000);
    DensityCI b = final_density_ci(100, 0.01, 13, 2000);
    DensityCI c = final_density_ci(10, 0.005, 17, 2000);
    bool overlap = a.lo <= b.hi && b.lo <= a.hi;
    bool below = c.hi < a.lo;
    CritResult res;
    res.pass = overlap && below;
    res.detail = "density(10 rounds)=" + fmt(a.mean) + " [" + fmt(a.lo) + "," + fmt(a.hi) +
                 "], density(100 rounds)=" + fmt(b.mean) + " [" + fmt(b.lo) + "," + fmt(b.hi) +
                 "] " + (overlap ? "overlap" : "DISJOINT") + "; halved flip rate " + fmt(c.mean) +
                 " [" + fmt(c.lo) + "," + fmt(c.hi) + "] " +
                 (below ? "strictly below" : "NOT below");
    return res;
}

// --- criterion 8: the hidden-walker adversary destroys the two-dimensional
// memory within 200 rounds while the three-dimensional memory under local
// noise at the matched per-round rate survives.
CritResult crit_walker_contrast() {
    MemoryRunConfig a;
    a.code_id = {CodeFamily::toric2d, 4};
    a.noise.kind = NoiseKind::markov_walker;
    a.noise.rho_spawn = 0.1;
    a.noise.eta = 0.0;
    a.rounds = 200;
    a.trials = 500;
    a.seed = 2024;
    a.record_rounds = false;
    ssqec::FailureEstimate ea = ssqec::estimate_failure(a);

    MemoryRunConfig b;
    b.code_id = {CodeFamily::toric3d_z, 3};
    b.noise.kind = NoiseKind::iid_local;
    b.noise.lambda = 0.0125;
    b.noise.eta = 0.0125;
    b.rounds = 200;
    b.trials = 2000;
    b.seed = 2024;
    b.record_rounds = false;
    ssqec::FailureEstimate eb = ssqec::estimate_failure(b);

    CritResult res;
    res.pass = ea.mean >= 0.5 && eb.mean < 0.05;
    res.detail = "walker on 2d L=4: failure " + fmt(ea.mean) + " (need >= 0.5); local noise on "
                 "3d L=3 at matched rate 0.0125: failure " +
                 fmt(eb.mean) + " (need < 0.05)";
    return res;
}

// --- criterion 9: Monte Carlo failure stays within the exactly computed
// per-round budget n(delta1+delta2)+delta3 plus three standard errors.
CritResult crit_lifetime_budget() {
    std::size_t bad = 0;
    std::string first;
    std::string summary;
    for (const Q& rate : {Q(1, 100), Q(1, 100000000)}) {
        ssqec::ExactBudget budget = ssqec::exact_budget_rep3(rate, rate);
        for (std::uint32_t rounds : {1u, 5u, 10u}) {
            MemoryRunConfig cfg;
            cfg.code_id = {CodeFamily::repetition, 3};
            cfg.noise.kind = NoiseKind::iid_local;
            cfg.noise.lambda = rate.get_d();
            cfg.noise.eta = rate.get_d();
            cfg.rounds = rounds;
            cfg.trials = 3000;
            cfg.seed = 4242;
            cfg.record_rounds = false;
            ssqec::FailureEstimate est = ssqec::estimate_failure(cfg);
            double se = std::sqrt(est.mean * (1.0 - est.mean) / double(est.trials));
            OracleReport r = ssqec::check_lifetime_budget(budget, rounds, est.mean, se, "");
            if (!r.pass) {
                ++bad;
                if (first.empty())
                    first = "rate " + rate.get_str() + " rounds " + std::to_string(rounds) +
                            ": mc=" + r.lhs + " budget=" + r.rhs;
            }
            if (rate != Q(1, 100))
                summary += (summary.empty() ? "rate 1e-8: " : " ") + std::string("n=") +
                           std::to_string(rounds) + " mc=" + fmt(est.mean) + " <= " + r.rhs;
        }
    }
    CritResult res;
    res.pass = bad == 0;
    res.detail = "6 budget checks (two rates, rounds 1/5/10), " + std::to_string(bad) +
                 " violations; " + summary + (first.empty() ? "" : "; first: " + first);
    return res;
}

// --- criterion 10: sweeps are byte-deterministic in the worker count.
CritResult crit_determinism() {
    std::vector<MemoryRunConfig> grid;
    for (double lambda : {0.01, 0.02})
        for (std::uint32_t rounds : {5u, 10u}) {
            MemoryRunConfig cfg;
            cfg.code_id = {CodeFamily::repetition, 3};
            cfg.noise.kind = NoiseKind::iid_local;
            cfg.noise.lambda = lambda;
            cfg.noise.eta = 0.01;
            cfg.rounds = rounds;
            cfg.trials = 200;
            cfg.seed = 77;
            cfg.record_rounds = false;
            grid.push_back(cfg);
        }
    {
        MemoryRunConfig cfg;
        cfg.code_id = {CodeFamily::toric2d, 2};
        cfg.noise.kind = NoiseKind::markov_walker;
        cfg.noise.rho_spawn = 0.05;
        cfg.noise.eta = 0.0;
        cfg.rounds = 10;
        cfg.trials = 200;
        cfg.seed = 77;
        cfg.record_rounds = false;
        grid.push_back(cfg);
    }

    const char* prev = std::getenv("SSQEC_WORKERS");
    std::string saved = prev ? prev : "";
    auto run_with = [&](const char* workers) {
        setenv("SSQEC_WORKERS", workers, 1);
        return ssqec::sweep_csv(ssqec::sweep(grid));
    };
    std::string c1 = run_with("1");
    std::string c4 = run_with("4");
    std::string c4b = run_with("4");
    std::string c16 = run_with("16");
    if (prev)
        setenv("SSQEC_WORKERS", saved.c_str(), 1);
    else
        unsetenv("SSQEC_WORKERS");

    CritResult res;
    res.pass = c1 == c4 && c4 == c16 && c4 == c4b;
    res.detail = std::string("CSV of a 5-point sweep under 1/4/16 workers: ") +
                 (res.pass ? "byte-identical (rerun stable)" : "MISMATCH");
    return res;
}

} // namespace

int main() {
    struct Entry {
        const char* what;
        CritResult (*run)();
        double cap_secs; // 0 = no stated cap
    };
    const Entry entries[10] = {
        {"randomized recovery replacement", crit_recovery_replacement, 120.0},
        {"locality of coupled composition", crit_composition, 300.0},
        {"interleaved associativity, exhaustive", crit_associativity, 0.0},
        {"syndrome repair linearity", crit_repair_linearity, 0.0},
        {"syndrome assignment + projection", crit_assignment_projection, 0.0},
        {"structured failure bound", crit_structured_bound, 0.0},
        {"stationary residual density", crit_stationary_density, 600.0},
        {"hidden-walker vs local-noise contrast", crit_walker_contrast, 900.0},
        {"exact lifetime budgets", crit_lifetime_budget, 0.0},
        {"worker-count determinism", crit_determinism, 0.0},
    };

    std::printf("[acceptance] ten product criteria: exact oracles + Monte Carlo\n");
    int failures = 0;
    for (int i = 0; i < 10; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        CritResult r;
        try {
            r = entries[i].run();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool overrun = entries[i].cap_secs > 0 && secs > entries[i].cap_secs;
        bool ok = r.pass && !overrun;
        if (!ok) ++failures;
        std::string cap;
        if (entries[i].cap_secs > 0)
            cap = overrun ? " (OVER CAP)"
                          : " (cap " + std::to_string(int(entries[i].cap_secs)) + " s)";
        std::printf("%s  criterion %2d  %-40s %8.1f s%s  |  %s\n", ok ? "PASS" : "FAIL", i + 1,
                    entries[i].what, secs, cap.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("[acceptance] all 10 criteria pass\n");
    else
        std::printf("[acceptance] %d of 10 criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <iosfwd>
#include <optional>

#include "ssqec/noise.hpp"

namespace ssqec {

struct MemoryRunConfig {
    CodeId code_id;
    NoiseModelSpec noise; // data noise and measurement-flip noise (eta)
    std::uint32_t rounds = 1;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    bool record_rounds = true;
};

struct RoundRecord {
    std::uint32_t residual_weight;  // |E| after this round's correction
    std::uint32_t observed_weight;  // |x| as observed (flips included)
    std::uint32_t repaired_weight;  // |syndrome(E)| after this round's correction
};
inline bool operator==(const RoundRecord& a, const RoundRecord& b) {
    return a.residual_weight == b.residual_weight && a.observed_weight == b.observed_weight &&
           a.repaired_weight == b.repaired_weight;
}

struct Trajectory {
    std::vector<RoundRecord> rounds;
    bool failed = false;
};

struct FailureEstimate {
    double mean = 0.0;
    double lo = 0.0; // 95% Wilson score interval
    double hi = 0.0;
    std::uint64_t failures = 0;
    std::uint64_t trials = 0;
};

void validate_config(const MemoryRunConfig& cfg);

// 95% Wilson score interval for x successes in n draws.
FailureEstimate wilson_interval(std::uint64_t failures, std::uint64_t trials);

// One memory trial: alternate noise accumulation and single-shot recovery for
// cfg.rounds rounds, then decide failure by ideal decoding of the final frame.
Trajectory run_trial(const MemoryRunConfig& cfg, const StabilizerCode& code,
                     std::uint64_t trial,
                     const PauliOp& initial_frame);
Trajectory run_trial(const MemoryRunConfig& cfg, const StabilizerCode& code,
                     std::uint64_t trial);

// Monte Carlo failure estimate over cfg.trials trials. Honors SSQEC_WORKERS
// (default 1); results are schedule-independent because every random draw is
// addressed by (trial, round, slot).
FailureEstimate estimate_failure(const MemoryRunConfig& cfg);

std::vector<Trajectory> collect_trajectories(const MemoryRunConfig& cfg,
                                             const StabilizerCode& code);

// Per-round mean syndrome weight of the residual frame, normalized by the
// number of checks. All trajectories must have equal length.
std::vector<double> residual_syndrome_density(const std::vector<Trajectory>& trajs,
                                              const StabilizerCode& code);

struct SweepRow {
    CodeId code_id;
    double lambda = 0.0;
    double eta = 0.0;
    std::uint32_t rounds = 0;
    std::uint64_t trials = 0;
    FailureEstimate est;
    std::uint64_t seed = 0;
};

std::vector<SweepRow> sweep(const std::vector<MemoryRunConfig>& grid);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Trajectory persistence: one JSON object per line, metadata first.
void dump_trajectories(std::ostream& os, const MemoryRunConfig& cfg,
                       const std::vector<Trajectory>& trajs);
// Re-runs the dumped config and compares; returns the number of matching
// trajectories, throwing on any mismatch or malformed input.
std::size_t replay_trajectories(std::istream& is);

std::size_t worker_count();

} // namespace ssqec

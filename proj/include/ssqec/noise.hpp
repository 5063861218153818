#pragma once

#include "ssqec/code.hpp"
#include "ssqec/rng.hpp"

namespace ssqec {

enum class NoiseKind { iid_local, fabrication, markov_walker };
enum class PathFamily { rows, rows_and_cols };

struct NoiseModelSpec {
    NoiseKind kind = NoiseKind::iid_local;
    double lambda = 0.0;    // iid_local: per-qubit X rate per round
    double eta = 0.0;       // iid measurement-flip rate per check outcome
    double q_fault = 0.0;   // fabrication: probability a qubit is faulty
    double per_use = 0.0;   // fabrication: X rate on faulty qubits per round
    double rho_spawn = 0.0; // markov_walker: walker creation rate per round
    PathFamily paths = PathFamily::rows_and_cols;
    bool depolarize = false; // iid_local: also apply Z independently
    std::uint64_t seed = 0;
};

// Live adversary memory. Walkers record which path they ride and how many of
// its edges they have already crossed; the faulty set is drawn once per trial.
struct WalkerPos {
    std::uint32_t path;
    std::uint32_t next_edge;
};

struct AdversaryState {
    std::vector<WalkerPos> walkers;
    BitVec faulty;
    bool faulty_ready = false;
};

// Deterministic draw addressing within a (trial, round):
//   slot 0           walker spawn decision
//   slot 1           walker path choice
//   slot 2+q         X noise on qubit q
//   slot 2+n+q       Z noise on qubit q (depolarizing option)
//   slot 2+2n+c      measurement flip on check c
// Fabrication fault sets live on their own stream (slot q, round 0).
inline constexpr std::uint32_t noise_stream_main = 0;
inline constexpr std::uint32_t noise_stream_fabrication = 1;

void validate_spec(const NoiseModelSpec& spec, const StabilizerCode& code);

std::size_t walker_path_count(const NoiseModelSpec& spec, const StabilizerCode& code);

// One round of data noise; mutates the adversary state (spawn, advance,
// retire walkers; lazily draw the faulty set).
PauliOp sample_data_noise(const NoiseModelSpec& spec, const StabilizerCode& code,
                          AdversaryState& state, const CounterRng& rng, std::uint64_t trial,
                          std::uint32_t round);

// One round of measurement flips. Reads the post-advance state only: the
// walker mode hides each active walker's endpoint pair, the other modes flip
// each outcome independently.
BitVec sample_measurement_flips(const NoiseModelSpec& spec, const StabilizerCode& code,
                                const AdversaryState& state, const CounterRng& rng,
                                std::uint64_t trial, std::uint32_t round);

} // namespace ssqec

#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ssqec/f2.hpp"
#include "ssqec/pauli.hpp"

namespace ssqec {

enum class CodeFamily { repetition, toric2d, toric3d_z };

std::string family_name(CodeFamily f);
CodeFamily family_from_name(const std::string& s);

struct CodeId {
    CodeFamily family;
    std::size_t size; // qubit count n for repetition, lattice side L otherwise
};

// A stabilizer code together with everything the memory model needs:
// measured operators, the outcome-to-syndrome map S, metachecks M,
// a correction rule, and the gauge group for failure decisions.
struct StabilizerCode {
    CodeFamily family = CodeFamily::repetition;
    std::size_t size_param = 0;
    std::size_t n = 0;

    std::vector<PauliOp> checks;
    std::vector<PauliOp> gauge_gens;                      // includes all checks
    std::vector<std::pair<PauliOp, PauliOp>> logical_reps; // (X-like, Z-like)
    std::vector<PauliOp> measured_ops;
    F2Matrix outcome_map; // S: sigma = S x on noiseless outcomes
    F2Matrix metachecks;  // M: M x = 0  on noiseless outcomes

    // Exhaustive table for the repetition family; lattice families decode
    // constructively and leave this empty.
    std::unordered_map<BitVec, PauliOp, BitVecHash> correction_table;

    // Symplectic span of gauge_gens over (x|z) vectors of length 2n.
    F2Span gauge_span;

    // Precomputed row reduction of the syndrome-realization system
    // (toric3d_z only): row_ops * incidence = echelon, used to solve
    // incidence * y = sigma deterministically.
    F2Matrix solver_row_ops;
    F2Matrix solver_echelon;
    std::vector<std::size_t> solver_pivot_cols;

    std::string name() const {
        return family_name(family) + "-" + std::to_string(size_param);
    }
    std::size_t n_checks() const { return checks.size(); }
    std::size_t n_measured() const { return measured_ops.size(); }

    BitVec symplectic(const PauliOp& p) const {
        BitVec v(2 * n);
        p.x.for_each_set([&](std::size_t i) { v.set(i, true); });
        p.z.for_each_set([&](std::size_t i) { v.set(n + i, true); });
        return v;
    }
};

StabilizerCode build_code(const CodeId& id);

// Bit i set iff e anticommutes with checks[i].  Linear in e.
BitVec syndrome(const StabilizerCode& code, const PauliOp& e);

// Bit j set iff e anticommutes with measured_ops[j].  Satisfies
// M x = 0 and S x = syndrome(e).
BitVec valid_outcome(const StabilizerCode& code, const PauliOp& e);

// The correction operator for a syndrome.  Total over every syndrome that
// syndrome_repair can emit: unrealizable inputs (odd sector parity in 2D,
// odd winding in 3D) are canonicalized deterministically before decoding.
PauliOp correction(const StabilizerCode& code, const BitVec& sigma);

// True iff correction(syndrome(e)) * e lies in the gauge group.
bool is_correctable(const StabilizerCode& code, const PauliOp& e);

// r(x) = S (x + rho(M x)) with rho a function of the metasyndrome alone,
// so r(x + y) = S x + r(y) holds identically whenever M x = 0.
BitVec syndrome_repair(const StabilizerCode& code, const BitVec& x);

// Exhaustive minimum-weight correction table keyed by syndrome; candidate
// errors are enumerated in (weight, masks) order so the stored operator is
// the canonical minimum for its syndrome class.  pure_x restricts the
// enumeration to X-type errors, which is lossless whenever adding Z factors
// can only raise the canonical key (true for the repetition family).
std::unordered_map<BitVec, PauliOp, BitVecHash>
build_correction_table(const StabilizerCode& code, bool pure_x,
                       std::size_t sigma_cap = std::size_t(1) << 12);

std::string code_to_json(const StabilizerCode& code);

} // namespace ssqec

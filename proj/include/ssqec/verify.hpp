#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssqec/channel.hpp"
#include "ssqec/rng.hpp"

namespace ssqec {

// One certified proposition instance.  For inequalities pass means
// LHS <= RHS, for identities LHS == RHS, always decided in exact rational
// arithmetic; lhs/rhs record the quantities as exact rational strings
// (or short decimals when a bound is irrational and was compared in squares).
struct OracleReport {
    std::string proposition; // stable id, e.g. "recovery_replacement"
    std::string instance;    // what was checked
    std::string lhs;
    std::string rhs;
    bool pass = false;
    std::string witness; // worst offender / tightness data; may be empty
};

std::string reports_to_json(const std::vector<OracleReport>& reports);

// ---------------------------------------------------------------------------
// Instance builders.  The oracles below take explicit distributions so tests
// can aim them; these helpers construct the standard instances exactly.
// ---------------------------------------------------------------------------

// All 2^n_bits flip vectors with p_y = eta^|y| (1-eta)^(n_bits-|y|).
FlipDistribution<mpq_class> exact_iid_flips(std::size_t n_bits, const mpq_class& eta);

// All 2^n X-type errors with p = lambda^|m| (1-lambda)^(n-|m|).
StochasticChannel<mpq_class> exact_iid_x_channel(std::size_t n, const mpq_class& lambda);

// Random channel on n qubits whose support tails are certified against
// lambda^|R| by construction: random operators and masses are drawn, then the
// non-identity mass is rescaled by the worst tail ratio, so most instances
// saturate at least one tail constraint.
StochasticChannel<mpq_class> random_local_channel(std::size_t n, const mpq_class& lambda,
                                                  const CounterRng& rng, std::uint64_t trial);

// Random distribution over all flip vectors on n_bits outcome bits.
FlipDistribution<mpq_class> random_flip_distribution(std::size_t n_bits, const CounterRng& rng,
                                                     std::uint64_t trial);

// Joint distribution over (measurement-flip vector, data error) pairs.  The
// marginals fix the recovery and the noise; the coupling between them is the
// adversarial degree of freedom the oracles exercise.
struct RecoveryNoiseJoint {
    FlipDistribution<mpq_class> flips;
    StochasticChannel<mpq_class> noise;
    std::vector<std::vector<mpq_class>> weight; // weight[y][e]
};

RecoveryNoiseJoint product_coupling(FlipDistribution<mpq_class> flips,
                                    StochasticChannel<mpq_class> noise);

// Marginal-preserving mass move on a coupling matrix: eps flows from
// (r1,c1),(r2,c2) onto (r1,c2),(r2,c1).
void shuffle_mass(std::vector<std::vector<mpq_class>>& weight, std::size_t r1, std::size_t c1,
                  std::size_t r2, std::size_t c2, const mpq_class& eps);

// Apply `count` random clamped shuffles, leaving marginals intact.
void random_shuffles(std::vector<std::vector<mpq_class>>& weight, std::size_t count,
                     const CounterRng& rng, std::uint64_t trial);

// ---------------------------------------------------------------------------
// Oracles.  Each one recomputes both sides of its proposition from BitVec /
// PauliOp / code primitives only, independent of the channel-calculus
// implementations it certifies, and cross-checks those against the exact
// values in floating point.
// ---------------------------------------------------------------------------

// Replacing a measured recovery round by its effective correction channel
// moves the state distribution (on code states) by at most the failure rate
// of the effective channel composed with the noise under the same coupling:
//   dist( recover-after-noise , effective-on-ideal )  <=
//   fail( effective x noise ).
// Checked for the supplied coupling and for the product coupling.
OracleReport check_recovery_replacement(const StabilizerCode& code,
                                        const RecoveryNoiseJoint& joint,
                                        const std::string& instance);

// Composing spatially local channels preserves spatial locality:
//   any coupling of Lambda_a with Lambda_b has tails within
//   (2 max(a,b)^(1/2))^|R|, and the independent composition has tails
//   within (a+b)^|R|.
// Draws `trials` random coupled two-round instances with certified marginals,
// then runs the deterministic pair-concentrated family that makes the square
// bound tight up to the constant (squared tightness ratio 1/4).
OracleReport check_composition_bounds(std::size_t n_qubits, const mpq_class& lambda_a,
                                      const mpq_class& lambda_b, std::size_t trials,
                                      std::uint64_t seed);

// Three-round interleaved composition is bracketing-independent: both
// two-step groupings and the direct three-way product give identical
// channels and identical per-round marginals, exactly.
OracleReport check_associativity(const StabilizerCode& code,
                                 const JointFaultDistribution<mpq_class>& joint,
                                 const std::string& instance);

// Identities of the syndrome-class assignment E -> table(syndrome(E)):
//   table ops compose consistently:  t(t(E) t(D)) == t(E D),
//   flagged checks of t(E D) never leave flagged(t E) | flagged(t D),
//   failure of corrected products ignores the D factor's detail:
//     fail(t(D E) E) == fail(t(D) E).
// Exhaustive over all Pauli pairs when 4^n is small, random pairs otherwise.
OracleReport check_syndrome_assignment(const StabilizerCode& code, std::size_t random_pairs,
                                       std::uint64_t seed);

// Replacing every operator of a channel by its table correction moves the
// channel (on code states) by at most its failure mass.  The witness channel
// that replaces only the uncorrectable operators realizes the bound: its
// correctable atoms stay in their gauge coset, so only failing mass moves.
OracleReport check_projection_approximation(const StabilizerCode& code,
                                            const StochasticChannel<mpq_class>& channel,
                                            const std::string& instance);

// Repair linearity: for every valid outcome x (one produced by a real error)
// and every flip vector y,  r(x ^ y) == S x ^ r(y).
// Exhaustive over flip vectors up to max_flip_weight, paired with identity,
// all single-qubit X errors, and `random_errors` random Pauli errors.
OracleReport check_repair_linearity(const StabilizerCode& code, std::size_t max_flip_weight,
                                    std::size_t random_errors, std::uint64_t seed);

// Structure behind the composed-failure bound.  Enumerates every pair of
// syndrome-class corrections whose product fails, takes m = the smallest
// flagged-union size, finds a cover B of the failing unions by size-m check
// sets, builds the extremal tail-saturating member of the syndrome-local
// class at tau, and certifies
//   worst-coupling fail( member x member )  <=  |B| (2 tau^(1/2))^m
// with the left side computed exactly by a rational max-flow.
struct StructuredFailure {
    std::vector<BitVec> cover; // B, subsets of check indices, each of size m
    std::size_t m = 0;
    mpq_class exact_fail;       // worst-coupling composed failure
    OracleReport report;
};

StructuredFailure find_structured_failure_bound(const StabilizerCode& code,
                                                const mpq_class& tau);

// Exact per-round budget constants for the three-qubit repetition code under
// iid data noise lambda and iid measurement flips eta.  The suprema are exact
// rationals obtained by vertex enumeration of the support-class polytope;
// only the final assembly (square roots and products) is floating point.
struct ExactBudget {
    mpq_class f1_star; // sup of fail over the spatial class at lambda
    mpq_class g1_sq;   // squared syndrome-class parameter covering that class
    mpq_class tau1_sq; // squared class parameter of the effective recovery
    std::size_t cover_size = 0; // |B| of the failure structure
    std::size_t m = 0;
    double g1 = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
};

ExactBudget exact_budget_rep3(const mpq_class& lambda, const mpq_class& eta);

// Lifetime consistency: measured failure after `rounds` rounds must not
// exceed rounds*(delta1+delta2) + delta3 (clamped to 1) by more than three
// Monte Carlo standard errors.
OracleReport check_lifetime_budget(const ExactBudget& budget, std::uint32_t rounds,
                                   double mc_failure, double mc_stderr,
                                   const std::string& instance);

// Representative battery across every proposition; used by `verify all`.
std::vector<OracleReport> verify_all(std::uint64_t seed);

} // namespace ssqec

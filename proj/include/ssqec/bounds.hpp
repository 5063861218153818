#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ssqec {

// Closed-form parameter functions wiring physical noise rates (lambda for
// data noise, eta for measurement flips) to residual-class parameters and
// per-round failure slacks.  Two regimes are supported:
//   local_noise     -- the residual class is again a local-noise class;
//                      f1 = f2 = 0, g1(l) = l, and the residual-parameter
//                      map g4 carries the confinement exponent 1/(2(1+K)).
//   local_syndromes -- the residual class constrains syndrome tails;
//                      f1, f2 take the code-family closed forms below and
//                      g4 carries exponent 1/2.
// Family constants have no universally correct values; the defaults are
// placeholders for exercising the formulas and must be calibrated per code
// family before any quantitative claim.
enum class BoundMode { local_noise, local_syndromes };

struct ParameterFunctions {
    BoundMode mode = BoundMode::local_noise;
    // f1(l) = n (l/lambda0)^{b n^i}   (local_syndromes; 0 in local_noise)
    double lambda0 = 1.0;
    double b = 1.0;
    double i = 1.0;
    // f2(t1,t2) = k n (2 max(t1,t2)^{1/2} / tau0)^{c n^j}   (local_syndromes)
    double c = 1.0;
    double j = 1.0;
    double k = 1.0;
    double tau0 = 1.0;
    // g1(l) = v1 l^{1/v2}   (local_syndromes; g1(l) = l in local_noise)
    double v1 = 1.0;
    double v2 = 1.0;
    // g4(e) = (e/eta0)^q / (1 - (e/eta0)^q), q = 1/2 or 1/(2(1+K)) by mode
    double eta0 = 1.0;
    double K = 0.0;
    // Residual-class failure bound f3 and recovery-inclusion slack f4 are
    // family-dependent; both default to identically zero.
    double f3_scale = 0.0;
    double f3_power = 1.0;
    double f4_scale = 0.0;
    double f4_power = 1.0;
};

void validate(const ParameterFunctions& pf);

double f1(const ParameterFunctions& pf, double lambda, std::size_t n_qubits);
double g1(const ParameterFunctions& pf, double lambda);
double f2(const ParameterFunctions& pf, double t1, double t2, std::size_t n_qubits);
double g2(const ParameterFunctions& pf, double t1, double t2);
double f3(const ParameterFunctions& pf, double tau);
double f4(const ParameterFunctions& pf, double eta);
double g4(const ParameterFunctions& pf, double eta);

// String-dispatched evaluation for config-driven callers; `which` is one of
// f1, g1, f2, g2, f3, f4, g4 and `args` carries that function's arguments.
double eval_fg(const ParameterFunctions& pf, const std::string& which,
               const std::vector<double>& args, std::size_t n_qubits);

// One fault-tolerant recovery round obeys
//   residual-in       : tau1 = g4(eta)
//   residual-composed : tau2 = g2(g1(lambda), tau1)
//   per-round slack   : delta1 = 2 f4(eta) + f2(tau1,tau2) + f3(g2(tau1,tau2))
//                       delta2 = f1(lambda) + f2(g1(lambda), tau1)
//   final-readout slack: delta3 = f3(tau1)
struct WiredParameters {
    double tau1 = 0.0;
    double tau2 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
};

WiredParameters wire_parameters(const ParameterFunctions& pf, double lambda,
                                double eta, std::size_t n_qubits);

// Failure-probability bound for an n-round memory: n (delta1 + delta2) +
// delta3, clamped to [0,1] for reporting.
double lifetime_bound(std::size_t n_rounds, double delta1, double delta2,
                      double delta3);

// Composition bound when every syndrome pattern outside a set B of size
// B_size requires at least m elementary faults: B_size * (2 max(tau,
// tau_p)^{1/2})^m.
double propB_bound(std::size_t B_size, std::size_t m, double tau, double tau_p);

} // namespace ssqec

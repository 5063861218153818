#include "ssqec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssqec {

namespace {

void check_rate(double x, const char* name) {
    if (!(x >= 0.0))
        throw std::domain_error(std::string("[bounds] ") + name +
                                " must be nonnegative");
}

double g4_exponent(const ParameterFunctions& pf) {
    return pf.mode == BoundMode::local_noise ? 1.0 / (2.0 * (1.0 + pf.K)) : 0.5;
}

} // namespace

void validate(const ParameterFunctions& pf) {
    auto pos = [](double x, const char* name) {
        if (!(x > 0.0))
            throw std::domain_error(std::string("[bounds] constant ") + name +
                                    " must be positive");
    };
    pos(pf.lambda0, "lambda0");
    pos(pf.b, "b");
    pos(pf.i, "i");
    pos(pf.c, "c");
    pos(pf.j, "j");
    pos(pf.k, "k");
    pos(pf.tau0, "tau0");
    pos(pf.v1, "v1");
    pos(pf.v2, "v2");
    pos(pf.eta0, "eta0");
    if (!(pf.K >= 0.0))
        throw std::domain_error("[bounds] constant K must be nonnegative");
    if (!(pf.f3_scale >= 0.0) || !(pf.f3_power > 0.0) ||
        !(pf.f4_scale >= 0.0) || !(pf.f4_power > 0.0))
        throw std::domain_error("[bounds] f3/f4 coefficients out of range");
}

double f1(const ParameterFunctions& pf, double lambda, std::size_t n_qubits) {
    check_rate(lambda, "lambda");
    if (pf.mode == BoundMode::local_noise) return 0.0;
    double n = double(n_qubits);
    return n * std::pow(lambda / pf.lambda0, pf.b * std::pow(n, pf.i));
}

double g1(const ParameterFunctions& pf, double lambda) {
    check_rate(lambda, "lambda");
    if (pf.mode == BoundMode::local_noise) return lambda;
    return pf.v1 * std::pow(lambda, 1.0 / pf.v2);
}

double f2(const ParameterFunctions& pf, double t1, double t2, std::size_t n_qubits) {
    check_rate(t1, "tau1");
    check_rate(t2, "tau2");
    if (pf.mode == BoundMode::local_noise) return 0.0;
    double n = double(n_qubits);
    double base = 2.0 * std::sqrt(std::max(t1, t2)) / pf.tau0;
    return pf.k * n * std::pow(base, pf.c * std::pow(n, pf.j));
}

double g2(const ParameterFunctions& pf, double t1, double t2) {
    (void)pf;
    check_rate(t1, "tau1");
    check_rate(t2, "tau2");
    return 2.0 * std::sqrt(std::max(t1, t2));
}

double f3(const ParameterFunctions& pf, double tau) {
    check_rate(tau, "tau");
    if (pf.f3_scale == 0.0) return 0.0;
    return pf.f3_scale * std::pow(tau, pf.f3_power);
}

double f4(const ParameterFunctions& pf, double eta) {
    check_rate(eta, "eta");
    if (pf.f4_scale == 0.0) return 0.0;
    return pf.f4_scale * std::pow(eta, pf.f4_power);
}

double g4(const ParameterFunctions& pf, double eta) {
    check_rate(eta, "eta");
    if (!(eta < pf.eta0))
        throw std::domain_error("[bounds] g4 requires eta < eta0");
    double x = std::pow(eta / pf.eta0, g4_exponent(pf));
    return x / (1.0 - x);
}

double eval_fg(const ParameterFunctions& pf, const std::string& which,
               const std::vector<double>& args, std::size_t n_qubits) {
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw std::invalid_argument("[bounds] " + which + " expects " +
                                        std::to_string(k) + " argument(s)");
    };
    if (which == "f1") { need(1); return f1(pf, args[0], n_qubits); }
    if (which == "g1") { need(1); return g1(pf, args[0]); }
    if (which == "f2") { need(2); return f2(pf, args[0], args[1], n_qubits); }
    if (which == "g2") { need(2); return g2(pf, args[0], args[1]); }
    if (which == "f3") { need(1); return f3(pf, args[0]); }
    if (which == "f4") { need(1); return f4(pf, args[0]); }
    if (which == "g4") { need(1); return g4(pf, args[0]); }
    throw std::invalid_argument("[bounds] unknown function '" + which + "'");
}

WiredParameters wire_parameters(const ParameterFunctions& pf, double lambda,
                                double eta, std::size_t n_qubits) {
    WiredParameters w;
    w.tau1 = g4(pf, eta);
    w.tau2 = g2(pf, g1(pf, lambda), w.tau1);
    w.delta1 = 2.0 * f4(pf, eta) + f2(pf, w.tau1, w.tau2, n_qubits) +
               f3(pf, g2(pf, w.tau1, w.tau2));
    w.delta2 = f1(pf, lambda, n_qubits) + f2(pf, g1(pf, lambda), w.tau1, n_qubits);
    w.delta3 = f3(pf, w.tau1);
    return w;
}

double lifetime_bound(std::size_t n_rounds, double delta1, double delta2,
                      double delta3) {
    check_rate(delta1, "delta1");
    check_rate(delta2, "delta2");
    check_rate(delta3, "delta3");
    double raw = double(n_rounds) * (delta1 + delta2) + delta3;
    return std::clamp(raw, 0.0, 1.0);
}

double propB_bound(std::size_t B_size, std::size_t m, double tau, double tau_p) {
    if (m < 1) throw std::domain_error("[bounds] m must be at least 1");
    check_rate(tau, "tau");
    check_rate(tau_p, "tau_p");
    double base = 2.0 * std::sqrt(std::max(tau, tau_p));
    return double(B_size) * std::pow(base, double(m));
}

} // namespace ssqec

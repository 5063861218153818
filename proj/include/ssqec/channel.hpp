#pragma once

#include <cmath>
#include <gmpxx.h>
#include <map>
#include <numeric>

#include "ssqec/code.hpp"

namespace ssqec {

// Probability arithmetic is templated: double for simulation-scale work,
// mpq_class when an oracle needs exact answers.
template <typename P> struct prob_traits;

template <> struct prob_traits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double p) { return p == 0.0; }
    static bool sums_to_one(double s) { return std::abs(s - 1.0) <= 1e-12; }
    static double pow_u(double b, std::size_t e) {
        return std::pow(b, static_cast<double>(e));
    }
    static double to_double(double p) { return p; }
    static double abs(double p) { return std::abs(p); }
};

template <> struct prob_traits<mpq_class> {
    static mpq_class zero() { return mpq_class(0); }
    static mpq_class one() { return mpq_class(1); }
    static bool is_zero(const mpq_class& p) { return sgn(p) == 0; }
    static bool sums_to_one(const mpq_class& s) { return s == 1; }
    static mpq_class pow_u(mpq_class b, std::size_t e) {
        mpq_class r(1);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    static double to_double(const mpq_class& p) { return p.get_d(); }
    static mpq_class abs(const mpq_class& p) { return ::abs(p); }
};

template <typename P> struct ChannelEntry {
    P p;
    PauliOp op;
};

// Finite mixture of Pauli operations (gauge factors implicit).
template <typename P> struct StochasticChannel {
    std::vector<ChannelEntry<P>> entries;

    static StochasticChannel point(const PauliOp& op) {
        return {{{prob_traits<P>::one(), op}}};
    }
};

// Mixture of recovery maps R_sigma, labeled by syndrome.
template <typename P> struct RecoveryChannel {
    std::vector<std::pair<P, BitVec>> entries; // (q_sigma, sigma)
};

// Distribution over measurement bit-flip configurations y.
template <typename P> struct FlipDistribution {
    std::vector<std::pair<P, BitVec>> entries; // (p_y, y)
};

// Joint distribution over per-round fault paths; the general time-correlated
// composition is a mixture over such paths.
template <typename P> struct FaultAtom {
    P p;
    std::vector<std::pair<PauliOp, BitVec>> path; // per round: (error, flips)
};
template <typename P> struct JointFaultDistribution {
    std::size_t rounds = 0;
    std::vector<FaultAtom<P>> atoms;
};

template <typename P>
void validate(const StochasticChannel<P>& ch) {
    P s = prob_traits<P>::zero();
    for (const auto& e : ch.entries) {
        if (prob_traits<P>::to_double(e.p) < 0)
            throw std::invalid_argument("[channel] negative probability");
        s += e.p;
    }
    if (!prob_traits<P>::sums_to_one(s))
        throw std::invalid_argument("[channel] probabilities do not sum to 1");
}

inline PauliOp op_from_symplectic(const StabilizerCode& code, const BitVec& v) {
    PauliOp op = PauliOp::identity(code.n);
    v.for_each_set([&](std::size_t i) {
        if (i < code.n)
            op.x.set(i, true);
        else
            op.z.set(i - code.n, true);
    });
    return op;
}

// Merge entries carrying the exact same operator.  Output is sorted by the
// (weight, masks) operator order; zero-probability entries are dropped.
template <typename P>
StochasticChannel<P> merge_identical(const StochasticChannel<P>& ch) {
    std::map<PauliOp, P> by_op;
    for (const auto& e : ch.entries) by_op[e.op] += e.p;
    std::vector<ChannelEntry<P>> out;
    out.reserve(by_op.size());
    for (auto& [op, p] : by_op)
        if (!prob_traits<P>::is_zero(p)) out.push_back({p, op});
    return {std::move(out)};
}

// Merge entries whose operators differ by a gauge element.  Each class is
// represented by the minimum-(weight, masks) operator among its occurring
// members and the reduced-echelon canonical coset element, so a lone gauge
// factor collapses to the identity.  Output is sorted by representative;
// zero-probability entries are dropped.
template <typename P>
StochasticChannel<P> coalesce(const StochasticChannel<P>& ch, const StabilizerCode& code) {
    std::map<BitVec, std::pair<P, PauliOp>> classes;
    for (const auto& e : ch.entries) {
        if (e.op.n() != code.n)
            throw std::invalid_argument("[channel] operator dimension mismatch");
        BitVec key = code.gauge_span.reduce(code.symplectic(e.op));
        auto it = classes.find(key);
        if (it == classes.end()) {
            PauliOp rep = op_from_symplectic(code, key);
            if (e.op < rep) rep = e.op;
            classes.emplace(std::move(key), std::make_pair(e.p, std::move(rep)));
        } else {
            it->second.first += e.p;
            if (e.op < it->second.second) it->second.second = e.op;
        }
    }
    std::vector<ChannelEntry<P>> out;
    out.reserve(classes.size());
    for (auto& [key, pe] : classes)
        if (!prob_traits<P>::is_zero(pe.first))
            out.push_back({pe.first, pe.second});
    std::sort(out.begin(), out.end(),
              [](const ChannelEntry<P>& a, const ChannelEntry<P>& b) { return a.op < b.op; });
    return {std::move(out)};
}

// Statistical distance: half the L1 difference over the common coalesced
// operator basis.
template <typename P>
P distance(const StochasticChannel<P>& a, const StochasticChannel<P>& b,
           const StabilizerCode& code) {
    auto ca = coalesce(a, code);
    auto cb = coalesce(b, code);
    std::map<BitVec, P> diff;
    for (const auto& e : ca.entries)
        diff[code.gauge_span.reduce(code.symplectic(e.op))] += e.p;
    for (const auto& e : cb.entries)
        diff[code.gauge_span.reduce(code.symplectic(e.op))] -= e.p;
    P total = prob_traits<P>::zero();
    for (const auto& [k, d] : diff) total += prob_traits<P>::abs(d);
    return total / 2;
}

// Probability mass on uncorrectable operators.
template <typename P>
P fail_rate(const StochasticChannel<P>& ch, const StabilizerCode& code) {
    P total = prob_traits<P>::zero();
    for (const auto& e : ch.entries)
        if (!is_correctable(code, e.op)) total += e.p;
    return total;
}

// ---------------------------------------------------------------------------
// Locality-class membership.  All four classes share one mechanism: items
// carry a probability and a support set, and every subset R of an occurring
// support must satisfy   sum_{supp >= R} p  <=  param^|R|.
// ---------------------------------------------------------------------------

enum class ClassKind { lambda_qubits, local_pauli, exc_local, recovery_local };

template <typename P> struct ClassSpec {
    ClassKind kind;
    P param;
};

template <typename P> struct MemberResult {
    bool ok = true;
    BitVec witness; // first violated subset, in (size, value) order
    P lhs = prob_traits<P>::zero();
    P rhs = prob_traits<P>::zero();
};

template <typename P>
std::map<BitVec, P> accumulate_tails(const std::vector<std::pair<P, BitVec>>& items,
                                     std::size_t support_cap = 20,
                                     std::size_t work_cap = std::size_t(1) << 22) {
    std::map<BitVec, P> tails;
    std::size_t work = 0;
    for (const auto& [p, supp] : items) {
        std::vector<std::size_t> bits = supp.set_bits();
        if (bits.size() > support_cap)
            throw std::runtime_error("[channel] membership support beyond capacity (" +
                                     std::to_string(bits.size()) + " > " +
                                     std::to_string(support_cap) + ")");
        std::size_t m = std::size_t(1) << bits.size();
        work += m;
        if (work > work_cap)
            throw std::runtime_error("[channel] membership enumeration beyond capacity");
        for (std::size_t mask = 1; mask < m; ++mask) {
            BitVec r(supp.size());
            for (std::size_t k = 0; k < bits.size(); ++k)
                if ((mask >> k) & 1) r.set(bits[k], true);
            tails[std::move(r)] += p;
        }
    }
    return tails;
}

// Tail condition against param^|R|.
template <typename P>
MemberResult<P> member_tails(const std::vector<std::pair<P, BitVec>>& items, const P& param) {
    auto tails = accumulate_tails(items);
    MemberResult<P> res;
    bool found = false;
    for (const auto& [r, tail] : tails) {
        P bound = prob_traits<P>::pow_u(param, r.count());
        if (tail > bound) {
            bool better = !found || r.count() < res.witness.count() ||
                          (r.count() == res.witness.count() && r < res.witness);
            if (better) {
                res.ok = false;
                res.witness = r;
                res.lhs = tail;
                res.rhs = bound;
                found = true;
            }
        }
    }
    return res;
}

// Tail condition against (s^(1/2))^|R|, compared in squares so rational
// arithmetic stays exact: tail(R)^2 <= s^|R|.
template <typename P>
MemberResult<P> member_tails_squared(const std::vector<std::pair<P, BitVec>>& items,
                                     const P& s) {
    auto tails = accumulate_tails(items);
    MemberResult<P> res;
    bool found = false;
    for (const auto& [r, tail] : tails) {
        P bound = prob_traits<P>::pow_u(s, r.count());
        if (tail * tail > bound) {
            bool better = !found || r.count() < res.witness.count() ||
                          (r.count() == res.witness.count() && r < res.witness);
            if (better) {
                res.ok = false;
                res.witness = r;
                res.lhs = tail * tail;
                res.rhs = bound;
                found = true;
            }
        }
    }
    return res;
}

template <typename P>
std::vector<std::pair<P, BitVec>> entry_support_items(const StochasticChannel<P>& ch) {
    std::vector<std::pair<P, BitVec>> items;
    items.reserve(ch.entries.size());
    for (const auto& e : ch.entries) items.emplace_back(e.p, e.op.support());
    return items;
}

template <typename P>
MemberResult<P> member(const StochasticChannel<P>& ch, const ClassSpec<P>& spec,
                       const StabilizerCode& code) {
    switch (spec.kind) {
        case ClassKind::lambda_qubits:
            // Spatial locality is a property of the channel in the given
            // form: supports are read off the entries as written.
            return member_tails(entry_support_items(merge_identical(ch)), spec.param);
        case ClassKind::local_pauli:
            // The Pauli-local class asks for *some* Pauli form meeting the
            // spatial condition; certify on canonical gauge representatives.
            return member_tails(entry_support_items(coalesce(ch, code)), spec.param);
        case ClassKind::exc_local: {
            std::vector<std::pair<P, BitVec>> items;
            for (const auto& e : ch.entries) {
                BitVec sig = syndrome(code, e.op);
                if (!(correction(code, sig) == e.op))
                    throw std::invalid_argument(
                        "[channel] syndrome-class member must consist of correction ops");
                items.emplace_back(e.p, sig);
            }
            return member_tails(items, spec.param);
        }
        case ClassKind::recovery_local:
            throw std::invalid_argument(
                "[channel] recovery-local membership applies to flip distributions");
    }
    throw std::invalid_argument("[channel] unknown class kind");
}

template <typename P>
MemberResult<P> member(const FlipDistribution<P>& fd, const ClassSpec<P>& spec) {
    if (spec.kind != ClassKind::recovery_local)
        throw std::invalid_argument("[channel] flip distributions only form recovery-local classes");
    return member_tails(fd.entries, spec.param);
}

template <typename P>
MemberResult<P> member(const RecoveryChannel<P>& rc, const ClassSpec<P>& spec) {
    if (spec.kind != ClassKind::recovery_local && spec.kind != ClassKind::exc_local)
        throw std::invalid_argument("[channel] syndrome-labeled channels form recovery-local "
                                    "or syndrome-local classes");
    return member_tails(rc.entries, spec.param);
}

// ---------------------------------------------------------------------------
// Composition.
// ---------------------------------------------------------------------------

template <typename P> struct ComposedChannel {
    StochasticChannel<P> composed;
    std::vector<StochasticChannel<P>> marginals;
};

template <typename P>
void validate(const JointFaultDistribution<P>& j) {
    P s = prob_traits<P>::zero();
    for (const auto& a : j.atoms) {
        if (a.path.size() != j.rounds)
            throw std::invalid_argument("[channel] fault path has wrong number of rounds");
        s += a.p;
    }
    if (!prob_traits<P>::sums_to_one(s))
        throw std::invalid_argument("[channel] joint probabilities do not sum to 1");
}

template <typename P>
ComposedChannel<P> correlated_compose(const JointFaultDistribution<P>& j,
                                      const StabilizerCode& code) {
    validate(j);
    StochasticChannel<P> composed;
    for (const auto& a : j.atoms) {
        PauliOp total = PauliOp::identity(code.n);
        for (const auto& [op, flips] : a.path) total = mul(op, total);
        composed.entries.push_back({a.p, std::move(total)});
    }
    ComposedChannel<P> out;
    out.composed = merge_identical(composed);
    for (std::size_t t = 0; t < j.rounds; ++t) {
        StochasticChannel<P> m;
        for (const auto& a : j.atoms) m.entries.push_back({a.p, a.path[t].first});
        out.marginals.push_back(merge_identical(m));
    }
    return out;
}

template <typename P>
JointFaultDistribution<P> product_joint(const std::vector<StochasticChannel<P>>& rounds) {
    JointFaultDistribution<P> j;
    j.rounds = rounds.size();
    j.atoms.push_back({prob_traits<P>::one(), {}});
    for (const auto& ch : rounds) {
        std::vector<FaultAtom<P>> next;
        next.reserve(j.atoms.size() * ch.entries.size());
        for (const auto& a : j.atoms)
            for (const auto& e : ch.entries) {
                FaultAtom<P> na = a;
                na.p *= e.p;
                na.path.emplace_back(e.op, BitVec());
                next.push_back(std::move(na));
            }
        j.atoms = std::move(next);
    }
    return j;
}

template <typename P>
StochasticChannel<P> uncorrelated_compose(const StochasticChannel<P>& a,
                                          const StochasticChannel<P>& b) {
    StochasticChannel<P> out;
    out.entries.reserve(a.entries.size() * b.entries.size());
    for (const auto& ea : a.entries)
        for (const auto& eb : b.entries)
            out.entries.push_back({ea.p * eb.p, mul(eb.op, ea.op)});
    return merge_identical(out);
}

// ---------------------------------------------------------------------------
// Recovery-side maps.
// ---------------------------------------------------------------------------

// The Pauli channel of corrections induced by a syndrome mixture.  Gauge
// elements have zero syndrome, so distinct syndromes give gauge-inequivalent
// corrections and merging exact duplicates is already the full coalescing.
template <typename P>
StochasticChannel<P> eff(const RecoveryChannel<P>& r, const StabilizerCode& code) {
    StochasticChannel<P> out;
    out.entries.reserve(r.entries.size());
    for (const auto& [q, sigma] : r.entries)
        out.entries.push_back({q, correction(code, sigma)});
    return merge_identical(out);
}

// Replace each operator by its table correction; the witness distance bound
// to the projected channel is the failure rate.
template <typename P>
std::pair<StochasticChannel<P>, P> synd_project(const StochasticChannel<P>& ch,
                                                const StabilizerCode& code) {
    StochasticChannel<P> out;
    out.entries.reserve(ch.entries.size());
    for (const auto& e : ch.entries)
        out.entries.push_back({e.p, correction(code, syndrome(code, e.op))});
    return {merge_identical(out), fail_rate(ch, code)};
}

// The recovery channel sum_y p_y R_{r(y)}.
template <typename P>
RecoveryChannel<P> recovery_from_flips(const FlipDistribution<P>& fd,
                                       const StabilizerCode& code) {
    std::map<BitVec, P> by_sigma;
    for (const auto& [p, y] : fd.entries) by_sigma[syndrome_repair(code, y)] += p;
    RecoveryChannel<P> out;
    out.entries.reserve(by_sigma.size());
    for (auto& [sigma, q] : by_sigma)
        if (!prob_traits<P>::is_zero(q)) out.entries.emplace_back(q, sigma);
    return out;
}

template <typename P>
StochasticChannel<double> to_double_channel(const StochasticChannel<P>& ch) {
    StochasticChannel<double> out;
    out.entries.reserve(ch.entries.size());
    for (const auto& e : ch.entries)
        out.entries.push_back({prob_traits<P>::to_double(e.p), e.op});
    return out;
}

} // namespace ssqec

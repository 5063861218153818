#include "ssqec/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "ssqec/bounds.hpp"
#include "ssqec/sim.hpp"

namespace ssqec {

namespace {

using Q = mpq_class;

std::string qstr(const Q& q) { return q.get_str(); }

std::string dstr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Q qpow(const Q& b, std::size_t e) { return prob_traits<Q>::pow_u(b, e); }

BitVec mask_bits(std::size_t n, std::uint64_t mask) {
    BitVec v(n);
    for (std::size_t i = 0; i < n && i < 64; ++i)
        if ((mask >> i) & 1) v.set(i, true);
    return v;
}

// Uniform random n-bit vector; consumes slots [slot, slot + ceil(n/64)).
BitVec random_mask(std::size_t n, const CounterRng& rng, std::uint64_t trial,
                   std::uint32_t round, std::uint32_t slot) {
    BitVec v(n);
    for (std::size_t w = 0; w * 64 < n; ++w) {
        std::uint64_t bits = rng.raw64(trial, round, slot + std::uint32_t(w));
        for (std::size_t k = 0; k < 64 && w * 64 + k < n; ++k)
            if ((bits >> k) & 1) v.set(w * 64 + k, true);
    }
    return v;
}

// Canonical representative of op modulo the gauge group; equal keys mean
// identical action on code states.
BitVec coset_key(const StabilizerCode& code, const PauliOp& op) {
    return code.gauge_span.reduce(code.symplectic(op));
}

using CosetDist = std::map<BitVec, Q>;

template <typename K>
Q half_l1(const std::map<K, Q>& a, const std::map<K, Q>& b) {
    std::map<K, Q> d = a;
    for (const auto& [k, v] : b) d[k] -= v;
    Q total = 0;
    for (const auto& [k, v] : d) total += abs(v);
    return total / 2;
}

// tail(R) = total mass of items whose support contains R, for every nonempty
// R inside the union of occurring supports.  Deliberately the dual loop order
// of the calculus implementation so the cross-checks compare two different
// computations.
std::map<BitVec, Q> subset_tails(const std::vector<std::pair<Q, BitVec>>& items) {
    std::map<BitVec, Q> tails;
    if (items.empty()) return tails;
    BitVec u(items.front().second.size());
    for (const auto& [p, s] : items) u |= s;
    std::vector<std::size_t> bits = u.set_bits();
    if (bits.size() > 20)
        throw std::runtime_error("[verify] tail support beyond capacity (" +
                                 std::to_string(bits.size()) + " > 20)");
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << bits.size()); ++mask) {
        BitVec r(u.size());
        for (std::size_t k = 0; k < bits.size(); ++k)
            if ((mask >> k) & 1) r.set(bits[k], true);
        Q t = 0;
        for (const auto& [p, s] : items)
            if ((r & s) == r) t += p;
        if (sgn(t) != 0) tails.emplace(std::move(r), std::move(t));
    }
    return tails;
}

void validate_joint(const RecoveryNoiseJoint& joint) {
    const auto& F = joint.flips.entries;
    const auto& N = joint.noise.entries;
    if (F.empty() || N.empty())
        throw std::invalid_argument("[verify] coupling needs nonempty marginals");
    if (F.size() * N.size() > (std::size_t(1) << 16))
        throw std::runtime_error("[verify] joint support beyond capacity (" +
                                 std::to_string(F.size() * N.size()) + " > 65536)");
    if (joint.weight.size() != F.size())
        throw std::invalid_argument("[verify] coupling row count mismatch");
    std::vector<Q> col(N.size(), Q(0));
    for (std::size_t y = 0; y < F.size(); ++y) {
        if (joint.weight[y].size() != N.size())
            throw std::invalid_argument("[verify] coupling column count mismatch");
        Q row = 0;
        for (std::size_t e = 0; e < N.size(); ++e) {
            const Q& w = joint.weight[y][e];
            if (sgn(w) < 0) throw std::invalid_argument("[verify] negative coupling mass");
            row += w;
            col[e] += w;
        }
        if (row != F[y].first)
            throw std::invalid_argument("[verify] coupling flip marginal mismatch");
    }
    for (std::size_t e = 0; e < N.size(); ++e)
        if (col[e] != N[e].p)
            throw std::invalid_argument("[verify] coupling noise marginal mismatch");
}

std::vector<std::vector<Q>> product_weights(const FlipDistribution<Q>& flips,
                                            const StochasticChannel<Q>& noise) {
    std::vector<std::vector<Q>> w(flips.entries.size(), std::vector<Q>(noise.entries.size()));
    for (std::size_t y = 0; y < flips.entries.size(); ++y)
        for (std::size_t e = 0; e < noise.entries.size(); ++e)
            w[y][e] = flips.entries[y].first * noise.entries[e].p;
    return w;
}

// ---------------------------------------------------------------------------
// Exact vertex enumeration of the three-qubit support-class polytope:
//   x_s >= 0 for the 8 qubit subsets s,  sum_s x_s = 1,
//   sum_{s >= r} x_s <= lambda^|r|  for the 7 nonempty subsets r.
// Every vertex makes 7 of the 15 inequalities tight alongside the equality;
// linear objectives over the polytope attain their maximum at a vertex.
// ---------------------------------------------------------------------------

struct Vertex {
    std::array<Q, 8> x;
};

std::vector<Vertex> support_polytope_vertices(const Q& lambda) {
    auto tail_rhs = [&](int r) {
        return qpow(lambda, std::size_t(__builtin_popcount(unsigned(r))));
    };
    std::vector<Vertex> verts;
    std::array<int, 7> pick = {0, 1, 2, 3, 4, 5, 6};
    while (true) {
        std::array<std::array<Q, 9>, 8> a{};
        for (int s = 0; s < 8; ++s) a[0][s] = 1;
        a[0][8] = 1;
        for (int k = 0; k < 7; ++k) {
            auto& row = a[k + 1];
            int c = pick[k];
            if (c < 7) {
                int r = c + 1;
                for (int s = 0; s < 8; ++s) row[s] = ((s & r) == r) ? 1 : 0;
                row[8] = tail_rhs(r);
            } else {
                row[c - 7] = 1;
                row[8] = 0;
            }
        }
        bool ok = true;
        for (int col = 0; col < 8 && ok; ++col) {
            int piv = -1;
            for (int r = col; r < 8; ++r)
                if (sgn(a[r][col]) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                ok = false;
                break;
            }
            std::swap(a[col], a[piv]);
            for (int r = 0; r < 8; ++r) {
                if (r == col || sgn(a[r][col]) == 0) continue;
                Q f = a[r][col] / a[col][col];
                for (int c2 = col; c2 < 9; ++c2) a[r][c2] -= f * a[col][c2];
            }
        }
        if (ok) {
            Vertex v;
            bool feas = true;
            for (int s = 0; s < 8; ++s) {
                v.x[s] = a[s][8] / a[s][s];
                if (sgn(v.x[s]) < 0) {
                    feas = false;
                    break;
                }
            }
            for (int r = 1; r < 8 && feas; ++r) {
                Q t = 0;
                for (int s = 0; s < 8; ++s)
                    if ((s & r) == r) t += v.x[s];
                if (t > tail_rhs(r)) feas = false;
            }
            if (feas) verts.push_back(std::move(v));
        }
        int i = 6;
        while (i >= 0 && pick[i] == 15 - 7 + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < 7; ++j) pick[j] = pick[j - 1] + 1;
    }
    return verts;
}

Q lp_max(const std::vector<Vertex>& verts, const std::array<Q, 8>& w) {
    Q best = 0;
    for (const auto& v : verts) {
        Q val = 0;
        for (int s = 0; s < 8; ++s)
            if (sgn(w[s]) != 0) val += w[s] * v.x[s];
        if (val > best) best = val;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Failure structure of a code's correction table and the exact worst-coupling
// composed failure via rational max-flow.
// ---------------------------------------------------------------------------

struct FlowNet {
    struct Edge {
        int to;
        std::size_t rev;
        mpz_class cap;
    };
    std::vector<std::vector<Edge>> g;
    std::vector<int> lvl;
    std::vector<std::size_t> it;

    explicit FlowNet(std::size_t n) : g(n) {}

    void add(int u, int v, mpz_class c) {
        g[std::size_t(u)].push_back({v, g[std::size_t(v)].size(), std::move(c)});
        g[std::size_t(v)].push_back({u, g[std::size_t(u)].size() - 1, mpz_class(0)});
    }

    bool bfs(int s, int t) {
        lvl.assign(g.size(), -1);
        std::vector<int> q{s};
        lvl[std::size_t(s)] = 0;
        for (std::size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (const Edge& e : g[std::size_t(u)])
                if (sgn(e.cap) > 0 && lvl[std::size_t(e.to)] < 0) {
                    lvl[std::size_t(e.to)] = lvl[std::size_t(u)] + 1;
                    q.push_back(e.to);
                }
        }
        return lvl[std::size_t(t)] >= 0;
    }

    mpz_class dfs(int u, int t, mpz_class f) {
        if (u == t) return f;
        for (std::size_t& i = it[std::size_t(u)]; i < g[std::size_t(u)].size(); ++i) {
            Edge& e = g[std::size_t(u)][i];
            if (sgn(e.cap) > 0 && lvl[std::size_t(e.to)] == lvl[std::size_t(u)] + 1) {
                mpz_class d = dfs(e.to, t, std::min(f, e.cap));
                if (sgn(d) > 0) {
                    e.cap -= d;
                    g[std::size_t(e.to)][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    mpz_class max_flow(int s, int t, const mpz_class& inf) {
        mpz_class flow = 0;
        while (bfs(s, t)) {
            it.assign(g.size(), 0);
            while (true) {
                mpz_class f = dfs(s, t, inf);
                if (sgn(f) == 0) break;
                flow += f;
            }
        }
        return flow;
    }
};

struct FailureStructure {
    std::vector<BitVec> sigmas;                            // realizable syndromes
    std::vector<std::pair<std::size_t, std::size_t>> failing; // index pairs
    std::vector<BitVec> unions;                            // distinct flagged unions
    std::size_t m = 0;
    std::vector<BitVec> cover;
    bool greedy = false;
};

template <typename Fn>
void for_each_size_subset(const std::vector<std::size_t>& bits, std::size_t m, Fn fn) {
    if (m == 0 || m > bits.size()) return;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = m;
        while (i-- > 0 && idx[i] == bits.size() - m + i) {
            if (i == 0) return;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool cover_dfs(const std::vector<std::uint64_t>& covers, std::uint64_t covered,
               std::uint64_t full, std::size_t depth, std::vector<std::size_t>& chosen) {
    if (covered == full) return true;
    if (depth == 0) return false;
    std::size_t first = 0;
    while ((covered >> first) & 1) ++first;
    for (std::size_t c = 0; c < covers.size(); ++c) {
        if (!((covers[c] >> first) & 1)) continue;
        chosen.push_back(c);
        if (cover_dfs(covers, covered | covers[c], full, depth - 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

FailureStructure failure_structure(const StabilizerCode& code) {
    FailureStructure fs;
    // Realizable syndromes form the linear span of the per-qubit generator
    // syndromes.
    F2Span span(code.n_checks());
    for (std::size_t q = 0; q < code.n; ++q) {
        span.add(syndrome(code, PauliOp::single_x(code.n, q)));
        span.add(syndrome(code, PauliOp::single_z(code.n, q)));
    }
    std::size_t rank = span.dim();
    if (rank > 12)
        throw std::runtime_error("[verify] syndrome space beyond capacity (2^" +
                                 std::to_string(rank) + " > 4096)");
    const auto& basis = span.basis();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << rank); ++mask) {
        BitVec s(code.n_checks());
        for (std::size_t k = 0; k < rank; ++k)
            if ((mask >> k) & 1) s ^= basis[k];
        fs.sigmas.push_back(std::move(s));
    }
    std::vector<PauliOp> omegas;
    omegas.reserve(fs.sigmas.size());
    for (const BitVec& s : fs.sigmas) omegas.push_back(correction(code, s));

    std::set<BitVec> union_set;
    for (std::size_t i = 0; i < omegas.size(); ++i)
        for (std::size_t j = 0; j < omegas.size(); ++j)
            if (!is_correctable(code, mul(omegas[i], omegas[j]))) {
                fs.failing.emplace_back(i, j);
                union_set.insert(fs.sigmas[i] | fs.sigmas[j]);
            }
    fs.unions.assign(union_set.begin(), union_set.end());
    if (fs.unions.empty()) return fs;

    fs.m = fs.unions.front().count();
    for (const BitVec& u : fs.unions) fs.m = std::min(fs.m, u.count());

    // Candidate cover members: every size-m subset of a failing union.
    std::set<BitVec> cand_set;
    for (const BitVec& u : fs.unions) {
        std::vector<std::size_t> bits = u.set_bits();
        for_each_size_subset(bits, fs.m, [&](const std::vector<std::size_t>& idx) {
            BitVec c(code.n_checks());
            for (std::size_t k : idx) c.set(bits[k], true);
            cand_set.insert(std::move(c));
        });
    }
    std::vector<BitVec> cands(cand_set.begin(), cand_set.end());

    if (fs.unions.size() <= 24 && cands.size() <= 512) {
        // exact minimum cover by iterative-deepening search
        std::vector<std::uint64_t> covers(cands.size(), 0);
        for (std::size_t c = 0; c < cands.size(); ++c)
            for (std::size_t u = 0; u < fs.unions.size(); ++u)
                if ((cands[c] & fs.unions[u]) == cands[c]) covers[c] |= std::uint64_t(1) << u;
        std::uint64_t full = (std::uint64_t(1) << fs.unions.size()) - 1;
        for (std::size_t depth = 1; depth <= fs.unions.size(); ++depth) {
            std::vector<std::size_t> chosen;
            if (cover_dfs(covers, 0, full, depth, chosen)) {
                for (std::size_t c : chosen) fs.cover.push_back(cands[c]);
                break;
            }
        }
    } else {
        fs.greedy = true;
        std::vector<char> covered(fs.unions.size(), 0);
        std::size_t remaining = fs.unions.size();
        while (remaining > 0) {
            std::size_t best = cands.size();
            std::size_t best_gain = 0;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                std::size_t gain = 0;
                for (std::size_t u = 0; u < fs.unions.size(); ++u)
                    if (!covered[u] && (cands[c] & fs.unions[u]) == cands[c]) ++gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            if (best == cands.size())
                throw std::logic_error("[verify] cover search stalled");
            fs.cover.push_back(cands[best]);
            for (std::size_t u = 0; u < fs.unions.size(); ++u)
                if (!covered[u] && (cands[best] & fs.unions[u]) == cands[best]) {
                    covered[u] = 1;
                    --remaining;
                }
        }
    }
    // The cover must be exact: every failing union contains a member.
    for (const BitVec& u : fs.unions) {
        bool hit = false;
        for (const BitVec& c : fs.cover)
            if ((c & u) == c) {
                hit = true;
                break;
            }
        if (!hit) throw std::logic_error("[verify] cover misses a failing union");
    }
    return fs;
}

// Extremal member of the syndrome-local class at tau: assign mass to high
// weight syndromes first, each time the largest value that keeps every tail
// sum_{sigma >= x} q_sigma within tau^|x|; slack ends on the zero syndrome.
std::vector<Q> saturate_syndrome_class(const std::vector<BitVec>& sigmas, const Q& tau) {
    std::vector<std::size_t> order(sigmas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        std::size_t ca = sigmas[a].count(), cb = sigmas[b].count();
        if (ca != cb) return ca > cb;
        return sigmas[a] < sigmas[b];
    });
    std::map<BitVec, Q> assigned;
    Q remaining = 1;
    std::vector<Q> q(sigmas.size(), Q(0));
    for (std::size_t idx : order) {
        const BitVec& s = sigmas[idx];
        std::vector<std::size_t> bits = s.set_bits();
        if (bits.size() > 12)
            throw std::runtime_error("[verify] syndrome weight beyond capacity");
        Q cap = remaining;
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << bits.size()); ++mask) {
            BitVec x(s.size());
            for (std::size_t k = 0; k < bits.size(); ++k)
                if ((mask >> k) & 1) x.set(bits[k], true);
            Q room = qpow(tau, std::size_t(__builtin_popcountll(mask))) - assigned[x];
            if (room < cap) cap = room;
        }
        if (sgn(cap) < 0) cap = 0;
        q[idx] = cap;
        if (sgn(cap) > 0) {
            for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << bits.size()); ++mask) {
                BitVec x(s.size());
                for (std::size_t k = 0; k < bits.size(); ++k)
                    if ((mask >> k) & 1) x.set(bits[k], true);
                assigned[x] += cap;
            }
            remaining -= cap;
        }
    }
    Q total = 0;
    for (const Q& v : q) total += v;
    if (total != 1) throw std::logic_error("[verify] extremal member mass mismatch");
    return q;
}

Q worst_coupling_fail(const std::vector<Q>& q,
                      const std::vector<std::pair<std::size_t, std::size_t>>& failing) {
    if (failing.empty()) return 0;
    mpz_class den(1);
    for (const Q& v : q) {
        mpz_class d = v.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::size_t s = q.size();
    FlowNet net(2 + 2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        Q scaled = q[i] * Q(den);
        mpz_class c = scaled.get_num();
        if (sgn(c) > 0) {
            net.add(0, int(2 + i), c);
            net.add(int(2 + s + i), 1, c);
        }
    }
    for (const auto& [i, j] : failing) net.add(int(2 + i), int(2 + s + j), den);
    mpz_class flow = net.max_flow(0, 1, den);
    return Q(flow) / Q(den);
}

std::string format_check_set(const BitVec& v) {
    std::string s = "{";
    bool first = true;
    for (std::size_t b : v.set_bits()) {
        if (!first) s += ",";
        s += std::to_string(b);
        first = false;
    }
    return s + "}";
}

JointFaultDistribution<Q> random_three_round_joint(std::size_t n, const CounterRng& rng,
                                                   std::uint64_t trial) {
    std::size_t atoms = 4 + rng.bounded(5, trial, 7, 0);
    std::vector<std::uint64_t> wts(atoms);
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < atoms; ++a) {
        wts[a] = 1 + rng.bounded(99, trial, 7, 1 + std::uint32_t(a));
        total += wts[a];
    }
    JointFaultDistribution<Q> j;
    j.rounds = 3;
    for (std::size_t a = 0; a < atoms; ++a) {
        FaultAtom<Q> atom;
        atom.p = Q(wts[a]) / Q(total);
        for (std::uint32_t r = 0; r < 3; ++r) {
            std::uint32_t slot = 2 * (3 * std::uint32_t(a) + r);
            PauliOp op(random_mask(n, rng, trial, 8, slot),
                       random_mask(n, rng, trial, 9, slot));
            atom.path.emplace_back(std::move(op), BitVec());
        }
        j.atoms.push_back(std::move(atom));
    }
    return j;
}

} // namespace

// ---------------------------------------------------------------------------
// Instance builders.
// ---------------------------------------------------------------------------

FlipDistribution<Q> exact_iid_flips(std::size_t n_bits, const Q& eta) {
    if (n_bits > 16) throw std::runtime_error("[verify] flip space beyond capacity");
    FlipDistribution<Q> fd;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n_bits); ++mask) {
        BitVec y = mask_bits(n_bits, mask);
        std::size_t w = y.count();
        fd.entries.emplace_back(qpow(eta, w) * qpow(1 - eta, n_bits - w), std::move(y));
    }
    return fd;
}

StochasticChannel<Q> exact_iid_x_channel(std::size_t n, const Q& lambda) {
    if (n > 16) throw std::runtime_error("[verify] error space beyond capacity");
    StochasticChannel<Q> ch;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        PauliOp op(mask_bits(n, mask), BitVec(n));
        std::size_t w = op.x.count();
        ch.entries.push_back({qpow(lambda, w) * qpow(1 - lambda, n - w), std::move(op)});
    }
    return ch;
}

StochasticChannel<Q> random_local_channel(std::size_t n, const Q& lambda,
                                          const CounterRng& rng, std::uint64_t trial) {
    if (n > 20) throw std::runtime_error("[verify] error space beyond capacity");
    std::size_t k = 2 + rng.bounded(5, trial, 0, 0);
    std::map<PauliOp, Q> mass;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t xm = rng.bounded(std::uint64_t(1) << n, trial, 1, 2 * std::uint32_t(i));
        std::uint64_t zm = rng.bounded(std::uint64_t(1) << n, trial, 1, 2 * std::uint32_t(i) + 1);
        if (xm == 0 && zm == 0) continue;
        PauliOp op(mask_bits(n, xm), mask_bits(n, zm));
        mass[op] += Q(1 + rng.bounded(999, trial, 2, std::uint32_t(i))) / Q(1000 * k);
    }
    // Rescale the non-identity mass by the worst tail ratio so the channel is
    // a certified member; most draws then saturate one constraint.
    std::vector<std::pair<Q, BitVec>> items;
    for (const auto& [op, p] : mass) items.emplace_back(p, op.support());
    Q ratio = 0;
    for (const auto& [r, t] : subset_tails(items)) {
        Q b = qpow(lambda, r.count());
        if (sgn(b) == 0) {
            ratio = -1; // lambda == 0 forces a pure identity channel
            break;
        }
        Q f = t / b;
        if (f > ratio) ratio = f;
    }
    StochasticChannel<Q> ch;
    Q rest = 1;
    if (sgn(ratio) < 0) {
        mass.clear();
    } else if (ratio > 1) {
        for (auto& [op, p] : mass) p /= ratio;
    }
    for (const auto& [op, p] : mass) rest -= p;
    ch.entries.push_back({rest, PauliOp::identity(n)});
    for (const auto& [op, p] : mass) ch.entries.push_back({p, op});
    validate(ch);
    return ch;
}

FlipDistribution<Q> random_flip_distribution(std::size_t n_bits, const CounterRng& rng,
                                             std::uint64_t trial) {
    if (n_bits > 12) throw std::runtime_error("[verify] flip space beyond capacity");
    std::size_t count = std::size_t(1) << n_bits;
    std::vector<std::uint64_t> w(count);
    std::uint64_t total = 0;
    for (std::size_t y = 0; y < count; ++y) {
        w[y] = rng.bounded(100, trial, 3, std::uint32_t(y));
        total += w[y];
    }
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    FlipDistribution<Q> fd;
    for (std::size_t y = 0; y < count; ++y)
        if (w[y] > 0) fd.entries.emplace_back(Q(w[y]) / Q(total), mask_bits(n_bits, y));
    return fd;
}

RecoveryNoiseJoint product_coupling(FlipDistribution<Q> flips, StochasticChannel<Q> noise) {
    RecoveryNoiseJoint j;
    j.weight = product_weights(flips, noise);
    j.flips = std::move(flips);
    j.noise = std::move(noise);
    return j;
}

void shuffle_mass(std::vector<std::vector<Q>>& weight, std::size_t r1, std::size_t c1,
                  std::size_t r2, std::size_t c2, const Q& eps) {
    if (r1 >= weight.size() || r2 >= weight.size() || c1 >= weight[r1].size() ||
        c2 >= weight[r2].size())
        throw std::invalid_argument("[verify] shuffle index out of range");
    if (sgn(eps) < 0 || weight[r1][c1] < eps || weight[r2][c2] < eps)
        throw std::invalid_argument("[verify] shuffle exceeds available mass");
    weight[r1][c1] -= eps;
    weight[r2][c2] -= eps;
    weight[r1][c2] += eps;
    weight[r2][c1] += eps;
}

void random_shuffles(std::vector<std::vector<Q>>& weight, std::size_t count,
                     const CounterRng& rng, std::uint64_t trial) {
    std::size_t rows = weight.size();
    std::size_t cols = rows ? weight[0].size() : 0;
    if (rows < 2 || cols < 2) return;
    for (std::size_t k = 0; k < count; ++k) {
        std::uint32_t base = 5 * std::uint32_t(k);
        std::size_t r1 = rng.bounded(rows, trial, 4, base);
        std::size_t c1 = rng.bounded(cols, trial, 4, base + 1);
        std::size_t r2 = (r1 + 1 + rng.bounded(rows - 1, trial, 4, base + 2)) % rows;
        std::size_t c2 = (c1 + 1 + rng.bounded(cols - 1, trial, 4, base + 3)) % cols;
        Q eps = weight[r1][c1] < weight[r2][c2] ? weight[r1][c1] : weight[r2][c2];
        eps *= Q(1 + rng.bounded(3, trial, 4, base + 4)) / Q(4);
        if (sgn(eps) > 0) shuffle_mass(weight, r1, c1, r2, c2, eps);
    }
}

// ---------------------------------------------------------------------------
// Oracles.
// ---------------------------------------------------------------------------

OracleReport check_recovery_replacement(const StabilizerCode& code,
                                        const RecoveryNoiseJoint& joint,
                                        const std::string& instance) {
    validate_joint(joint);
    validate(joint.noise);
    const auto& F = joint.flips.entries;
    const auto& N = joint.noise.entries;

    std::vector<BitVec> ry;
    std::vector<PauliOp> omega_y;
    ry.reserve(F.size());
    for (const auto& [p, y] : F) {
        ry.push_back(syndrome_repair(code, y));
        omega_y.push_back(correction(code, ry.back()));
    }
    std::vector<BitVec> xe;
    xe.reserve(N.size());
    for (const auto& e : N) xe.push_back(valid_outcome(code, e.op));

    // Effective recovery applied to the noiseless state, on gauge cosets.
    CosetDist ideal;
    StochasticChannel<double> ideal_d;
    for (std::size_t yi = 0; yi < F.size(); ++yi) {
        ideal[coset_key(code, omega_y[yi])] += F[yi].first;
        ideal_d.entries.push_back({F[yi].first.get_d(), omega_y[yi]});
    }

    struct Side {
        Q lhs, rhs;
        StochasticChannel<double> real_d, eff_d;
    };
    auto run = [&](const std::vector<std::vector<Q>>& w) {
        Side s;
        s.rhs = 0;
        CosetDist real;
        for (std::size_t yi = 0; yi < F.size(); ++yi) {
            const BitVec& y = F[yi].second;
            for (std::size_t ei = 0; ei < N.size(); ++ei) {
                const Q& p = w[yi][ei];
                if (sgn(p) == 0) continue;
                BitVec shat = syndrome_repair(code, xe[ei] ^ y);
                PauliOp net = mul(correction(code, shat), N[ei].op);
                real[coset_key(code, net)] += p;
                PauliOp effe = mul(omega_y[yi], N[ei].op);
                if (!is_correctable(code, effe)) s.rhs += p;
                s.real_d.entries.push_back({p.get_d(), std::move(net)});
                s.eff_d.entries.push_back({p.get_d(), std::move(effe)});
            }
        }
        s.lhs = half_l1(real, ideal);
        return s;
    };

    Side given = run(joint.weight);
    Side prod = run(product_weights(joint.flips, joint.noise));

    bool cross_ok =
        std::abs(distance(given.real_d, ideal_d, code) - given.lhs.get_d()) <= 1e-9 &&
        std::abs(fail_rate(given.eff_d, code) - given.rhs.get_d()) <= 1e-9;

    OracleReport rep;
    rep.proposition = "recovery_replacement";
    rep.instance = instance;
    rep.lhs = qstr(given.lhs);
    rep.rhs = qstr(given.rhs);
    rep.pass = given.lhs <= given.rhs && prod.lhs <= prod.rhs && cross_ok;
    rep.witness = "independent coupling lhs=" + qstr(prod.lhs) + " rhs=" + qstr(prod.rhs) +
                  (cross_ok ? "" : "; float cross-check diverged");
    return rep;
}

OracleReport check_composition_bounds(std::size_t n_qubits, const Q& lambda_a,
                                      const Q& lambda_b, std::size_t trials,
                                      std::uint64_t seed) {
    if (n_qubits < 2 || n_qubits > 6)
        throw std::runtime_error("[verify] composition oracle handles 2..6 qubits");
    CounterRng rng(seed, 0);
    Q mx = lambda_a > lambda_b ? lambda_a : lambda_b;
    Q s2 = 4 * mx;            // squared interleaved class parameter
    Q sum = lambda_a + lambda_b;
    std::size_t violations = 0;
    std::string first_violation;
    Q worst_ratio = 0;     // interleaved, in squares
    Q worst_sum_ratio = 0; // independent
    bool cross_ok = true;

    auto note = [&](const std::string& what) {
        ++violations;
        if (first_violation.empty()) first_violation = what;
    };

    auto check_instance = [&](const StochasticChannel<Q>& a, const StochasticChannel<Q>& b,
                              const std::vector<std::vector<Q>>& w, bool crosscheck) {
        // certified marginals
        const StochasticChannel<Q>* chans[2] = {&a, &b};
        const Q* params[2] = {&lambda_a, &lambda_b};
        for (int side = 0; side < 2; ++side) {
            std::vector<std::pair<Q, BitVec>> items;
            for (const auto& e : chans[side]->entries)
                if (!e.op.is_identity()) items.emplace_back(e.p, e.op.support());
            for (const auto& [r, t] : subset_tails(items))
                if (t > qpow(*params[side], r.count())) note("marginal tail at " + r.to_string());
        }
        // interleaved composition under the supplied coupling, support read
        // off the pair form
        std::vector<std::pair<Q, BitVec>> items;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            for (std::size_t j = 0; j < b.entries.size(); ++j)
                if (sgn(w[i][j]) != 0)
                    items.emplace_back(w[i][j],
                                       a.entries[i].op.support() | b.entries[j].op.support());
        auto tails = subset_tails(items);
        for (const auto& [r, t] : tails) {
            Q bound = qpow(s2, r.count());
            Q lhs_sq = t * t;
            if (lhs_sq > bound) note("interleaved tail at " + r.to_string());
            if (sgn(bound) != 0) {
                Q ratio = lhs_sq / bound;
                if (ratio > worst_ratio) worst_ratio = ratio;
            }
        }
        // independent composition: product coupling against the sum class
        std::vector<std::pair<Q, BitVec>> pitems;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            for (std::size_t j = 0; j < b.entries.size(); ++j)
                if (sgn(a.entries[i].p) != 0 && sgn(b.entries[j].p) != 0)
                    pitems.emplace_back(a.entries[i].p * b.entries[j].p,
                                        a.entries[i].op.support() | b.entries[j].op.support());
        for (const auto& [r, t] : subset_tails(pitems)) {
            Q bound = qpow(sum, r.count());
            if (t > bound) note("independent tail at " + r.to_string());
            if (sgn(bound) != 0) {
                Q ratio = t / bound;
                if (ratio > worst_sum_ratio) worst_sum_ratio = ratio;
            }
        }
        if (crosscheck) {
            std::vector<std::pair<double, BitVec>> ditems;
            for (const auto& [p, s] : items) ditems.emplace_back(p.get_d(), s);
            auto dtails = accumulate_tails(ditems);
            for (const auto& [r, t] : tails) {
                auto it = dtails.find(r);
                double dv = it == dtails.end() ? 0.0 : it->second;
                if (std::abs(dv - t.get_d()) > 1e-9) cross_ok = false;
            }
        }
    };

    for (std::size_t t = 0; t < trials; ++t) {
        auto a = random_local_channel(n_qubits, lambda_a, rng, 2 * t);
        auto b = random_local_channel(n_qubits, lambda_b, rng, 2 * t + 1);
        std::vector<std::vector<Q>> w(a.entries.size(), std::vector<Q>(b.entries.size()));
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            for (std::size_t j = 0; j < b.entries.size(); ++j)
                w[i][j] = a.entries[i].p * b.entries[j].p;
        random_shuffles(w, 6, rng, 2 * t);
        check_instance(a, b, w, t % 64 == 0);
    }

    // Pair-concentrated family: the two sides place X on different qubits of
    // a pair and the coupling forbids coincidence, doubling the pair tail.
    Q mu = lambda_a < lambda_b ? lambda_a : lambda_b;
    Q adv_ratio = 0;
    bool adversarial = sgn(mu) > 0 && 2 * lambda_a + 2 * lambda_b - 2 * mu <= 1;
    if (adversarial) {
        for (std::size_t q1 = 0; q1 + 1 < n_qubits; ++q1)
            for (std::size_t q2 = q1 + 1; q2 < n_qubits; ++q2) {
                auto make = [&](const Q& l) {
                    StochasticChannel<Q> c;
                    c.entries.push_back({1 - 2 * l, PauliOp::identity(n_qubits)});
                    c.entries.push_back({l, PauliOp::single_x(n_qubits, q1)});
                    c.entries.push_back({l, PauliOp::single_x(n_qubits, q2)});
                    return c;
                };
                auto a = make(lambda_a);
                auto b = make(lambda_b);
                std::vector<std::vector<Q>> w(3, std::vector<Q>(3, Q(0)));
                w[1][2] = mu;
                w[2][1] = mu;
                w[1][0] = lambda_a - mu;
                w[2][0] = lambda_a - mu;
                w[0][1] = lambda_b - mu;
                w[0][2] = lambda_b - mu;
                w[0][0] = 1 - 2 * lambda_a - 2 * lambda_b + 2 * mu;
                check_instance(a, b, w, q1 == 0 && q2 == 1);
                Q ratio = (4 * mu * mu) / (s2 * s2);
                if (ratio > adv_ratio) adv_ratio = ratio;
            }
    }

    OracleReport rep;
    rep.proposition = "local_composition";
    rep.instance = "n=" + std::to_string(n_qubits) + " lambda_a=" + qstr(lambda_a) +
                   " lambda_b=" + qstr(lambda_b) + " trials=" + std::to_string(trials);
    rep.lhs = qstr(worst_ratio);
    rep.rhs = "1";
    rep.pass = violations == 0 && cross_ok && (!adversarial || adv_ratio >= Q(1, 25));
    rep.witness = "pair-concentrated squared ratio " + qstr(adv_ratio) +
                  "; independent max ratio " + qstr(worst_sum_ratio) +
                  (first_violation.empty() ? "" : "; first violation: " + first_violation) +
                  (cross_ok ? "" : "; float cross-check diverged");
    return rep;
}

OracleReport check_associativity(const StabilizerCode& code,
                                 const JointFaultDistribution<Q>& joint,
                                 const std::string& instance) {
    if (joint.rounds != 3)
        throw std::invalid_argument("[verify] associativity oracle needs a three-round joint");
    if (joint.atoms.size() > 64)
        throw std::runtime_error("[verify] joint support beyond capacity (" +
                                 std::to_string(joint.atoms.size()) + " > 64 atoms)");
    validate(joint);

    using OpDist = std::map<PauliOp, Q>;
    OpDist right, left, via12, via23, m12, m23;
    for (const auto& a : joint.atoms) {
        if (sgn(a.p) == 0) continue;
        const PauliOp& e1 = a.path[0].first;
        const PauliOp& e2 = a.path[1].first;
        const PauliOp& e3 = a.path[2].first;
        right[mul(e3, mul(e2, e1))] += a.p;
        left[mul(mul(e3, e2), e1)] += a.p;
        PauliOp c12 = mul(e2, e1);
        via12[mul(e3, c12)] += a.p;
        m12[c12] += a.p;
        PauliOp c23 = mul(e3, e2);
        via23[mul(c23, e1)] += a.p;
        m23[c23] += a.p;
    }

    // The calculus implementation must agree exactly, on the full composition
    // and on both two-round groupings.
    auto to_dist = [](const StochasticChannel<Q>& ch) {
        OpDist d;
        for (const auto& e : ch.entries)
            if (sgn(e.p) != 0) d[e.op] += e.p;
        return d;
    };
    OpDist lib_full = to_dist(correlated_compose(joint, code).composed);
    JointFaultDistribution<Q> j12{2, {}}, j23{2, {}};
    for (const auto& a : joint.atoms) {
        j12.atoms.push_back({a.p, {a.path[0], a.path[1]}});
        j23.atoms.push_back({a.p, {a.path[1], a.path[2]}});
    }
    OpDist lib12 = to_dist(correlated_compose(j12, code).composed);
    OpDist lib23 = to_dist(correlated_compose(j23, code).composed);

    Q disc = 0;
    auto upd = [&](const OpDist& x, const OpDist& y) {
        Q d = half_l1(x, y);
        if (d > disc) disc = d;
    };
    upd(right, left);
    upd(right, via12);
    upd(right, via23);
    upd(right, lib_full);
    upd(m12, lib12);
    upd(m23, lib23);

    // float cross-check of the full composition
    JointFaultDistribution<double> jd;
    jd.rounds = 3;
    for (const auto& a : joint.atoms) {
        FaultAtom<double> ad;
        ad.p = a.p.get_d();
        ad.path = a.path;
        jd.atoms.push_back(std::move(ad));
    }
    bool cross_ok = true;
    for (const auto& e : correlated_compose(jd, code).composed.entries) {
        auto it = right.find(e.op);
        double exact = it == right.end() ? 0.0 : it->second.get_d();
        if (std::abs(e.p - exact) > 1e-9) cross_ok = false;
    }

    OracleReport rep;
    rep.proposition = "interleaved_associativity";
    rep.instance = instance;
    rep.lhs = qstr(disc);
    rep.rhs = "0";
    rep.pass = sgn(disc) == 0 && cross_ok;
    rep.witness = "atoms=" + std::to_string(joint.atoms.size()) +
                  (cross_ok ? "" : "; float cross-check diverged");
    return rep;
}

OracleReport check_syndrome_assignment(const StabilizerCode& code, std::size_t random_pairs,
                                       std::uint64_t seed) {
    std::vector<PauliOp> ops;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool exhaustive = random_pairs == 0;
    if (exhaustive) {
        if (code.n > 5)
            throw std::runtime_error("[verify] exhaustive pair space beyond capacity");
        std::uint64_t side = std::uint64_t(1) << code.n;
        for (std::uint64_t xm = 0; xm < side; ++xm)
            for (std::uint64_t zm = 0; zm < side; ++zm)
                ops.emplace_back(mask_bits(code.n, xm), mask_bits(code.n, zm));
        for (std::size_t i = 0; i < ops.size(); ++i)
            for (std::size_t j = 0; j < ops.size(); ++j) pairs.emplace_back(i, j);
    } else {
        CounterRng rng(seed, 0);
        std::uint32_t words = std::uint32_t((code.n + 63) / 64);
        for (std::size_t t = 0; t < random_pairs; ++t) {
            ops.emplace_back(random_mask(code.n, rng, t, 5, 0),
                             random_mask(code.n, rng, t, 5, words));
            ops.emplace_back(random_mask(code.n, rng, t, 5, 2 * words),
                             random_mask(code.n, rng, t, 5, 3 * words));
            pairs.emplace_back(2 * t, 2 * t + 1);
        }
    }

    std::vector<BitVec> sig;
    std::vector<PauliOp> tab;
    sig.reserve(ops.size());
    for (const PauliOp& op : ops) {
        sig.push_back(syndrome(code, op));
        tab.push_back(correction(code, sig.back()));
    }

    std::size_t violations = 0;
    std::string witness;
    auto note = [&](const char* what, const PauliOp& e, const PauliOp& d) {
        ++violations;
        if (witness.empty())
            witness = std::string(what) + " at E=" + e.to_string() + " D=" + d.to_string();
    };
    for (const auto& [ia, ib] : pairs) {
        const PauliOp& e = ops[ia];
        const PauliOp& d = ops[ib];
        PauliOp ted = correction(code, syndrome(code, mul(e, d)));
        if (correction(code, syndrome(code, mul(tab[ia], tab[ib]))) != ted)
            note("table composition", e, d);
        BitVec sed = syndrome(code, ted);
        if ((sed & (sig[ia] | sig[ib])) != sed) note("flag containment", e, d);
        PauliOp tde = correction(code, syndrome(code, mul(d, e)));
        if (is_correctable(code, mul(tde, e)) != is_correctable(code, mul(tab[ib], e)))
            note("failure equality", e, d);
    }

    OracleReport rep;
    rep.proposition = "syndrome_assignment";
    rep.instance = code.name() + ", " + std::to_string(pairs.size()) +
                   (exhaustive ? " exhaustive" : " random") + " pairs";
    rep.lhs = std::to_string(violations);
    rep.rhs = "0";
    rep.pass = violations == 0;
    rep.witness = witness;
    return rep;
}

OracleReport check_projection_approximation(const StabilizerCode& code,
                                            const StochasticChannel<Q>& channel,
                                            const std::string& instance) {
    validate(channel);
    CosetDist orig, proj, witness_dist;
    Q fail = 0;
    bool atom_ok = true;
    for (const auto& e : channel.entries) {
        BitVec key = coset_key(code, e.op);
        PauliOp t = correction(code, syndrome(code, e.op));
        BitVec tkey = coset_key(code, t);
        orig[key] += e.p;
        proj[tkey] += e.p;
        if (is_correctable(code, e.op)) {
            witness_dist[key] += e.p;
            if (key != tkey) atom_ok = false; // correctable atoms must keep their coset
        } else {
            fail += e.p;
            witness_dist[tkey] += e.p;
        }
    }
    Q lhs = half_l1(orig, proj);
    Q moved = half_l1(orig, witness_dist);   // <= fail: only failing atoms moved
    Q residual = half_l1(witness_dist, proj); // must vanish

    auto chd = to_double_channel(channel);
    auto [projd, faild] = synd_project(chd, code);
    bool cross_ok = std::abs(faild - fail.get_d()) <= 1e-9 &&
                    std::abs(distance(chd, projd, code) - lhs.get_d()) <= 1e-9;

    OracleReport rep;
    rep.proposition = "projection_approximation";
    rep.instance = instance;
    rep.lhs = qstr(lhs);
    rep.rhs = qstr(fail);
    rep.pass = atom_ok && lhs <= fail && moved <= fail && sgn(residual) == 0 && cross_ok;
    rep.witness = "witness moved " + qstr(moved) + ", residual " + qstr(residual) +
                  (cross_ok ? "" : "; float cross-check diverged");
    return rep;
}

OracleReport check_repair_linearity(const StabilizerCode& code, std::size_t max_flip_weight,
                                    std::size_t random_errors, std::uint64_t seed) {
    if (max_flip_weight > 2)
        throw std::runtime_error("[verify] flip weight beyond capacity (max 2)");
    std::size_t mbits = code.measured_ops.size();
    std::vector<BitVec> ys;
    ys.emplace_back(mbits);
    if (max_flip_weight >= 1)
        for (std::size_t i = 0; i < mbits; ++i) {
            BitVec y(mbits);
            y.set(i, true);
            ys.push_back(std::move(y));
        }
    if (max_flip_weight >= 2)
        for (std::size_t i = 0; i < mbits; ++i)
            for (std::size_t j = i + 1; j < mbits; ++j) {
                BitVec y(mbits);
                y.set(i, true);
                y.set(j, true);
                ys.push_back(std::move(y));
            }

    std::vector<PauliOp> errs;
    errs.push_back(PauliOp::identity(code.n));
    for (std::size_t q = 0; q < code.n; ++q) {
        errs.push_back(PauliOp::single_x(code.n, q));
        errs.push_back(PauliOp::single_z(code.n, q));
    }
    CounterRng rng(seed, 0);
    std::uint32_t words = std::uint32_t((code.n + 63) / 64);
    for (std::size_t t = 0; t < random_errors; ++t)
        errs.emplace_back(random_mask(code.n, rng, t, 6, 0),
                          random_mask(code.n, rng, t, 6, words));

    std::vector<BitVec> ry;
    ry.reserve(ys.size());
    for (const BitVec& y : ys) ry.push_back(syndrome_repair(code, y));

    std::size_t violations = 0;
    std::string witness;
    for (const PauliOp& e : errs) {
        BitVec x = valid_outcome(code, e);
        BitVec sx = code.outcome_map.apply(x);
        for (std::size_t yi = 0; yi < ys.size(); ++yi) {
            if (syndrome_repair(code, x ^ ys[yi]) != (sx ^ ry[yi])) {
                ++violations;
                if (witness.empty())
                    witness = "E=" + e.to_string() + " y=" + ys[yi].to_string();
            }
        }
    }

    OracleReport rep;
    rep.proposition = "repair_linearity";
    rep.instance = code.name() + ", flips up to weight " + std::to_string(max_flip_weight) +
                   ", " + std::to_string(errs.size()) + " errors";
    rep.lhs = std::to_string(violations);
    rep.rhs = "0";
    rep.pass = violations == 0;
    rep.witness = witness;
    return rep;
}

StructuredFailure find_structured_failure_bound(const StabilizerCode& code, const Q& tau) {
    if (sgn(tau) < 0 || tau >= 1)
        throw std::invalid_argument("[verify] tau must lie in [0, 1)");
    FailureStructure fs = failure_structure(code);

    StructuredFailure out;
    out.cover = fs.cover;
    out.m = fs.m;

    std::vector<Q> q = saturate_syndrome_class(fs.sigmas, tau);
    out.exact_fail = worst_coupling_fail(q, fs.failing);

    OracleReport rep;
    rep.proposition = "structured_failure_bound";
    rep.instance = code.name() + " tau=" + qstr(tau);
    rep.lhs = qstr(out.exact_fail);
    bool pass;
    double bound_d;
    if (fs.unions.empty()) {
        rep.rhs = "0";
        bound_d = 0.0;
        pass = sgn(out.exact_fail) == 0;
    } else {
        Q base = 4 * tau; // squared per-member factor
        Q csize(static_cast<unsigned long>(fs.cover.size()));
        bound_d = double(fs.cover.size()) *
                  std::pow(2.0 * std::sqrt(tau.get_d()), double(fs.m));
        if (fs.m % 2 == 0) {
            Q bound = csize * qpow(base, fs.m / 2);
            pass = out.exact_fail <= bound;
            rep.rhs = qstr(bound);
        } else {
            Q bound_sq = csize * csize * qpow(base, fs.m);
            pass = out.exact_fail * out.exact_fail <= bound_sq;
            rep.rhs = dstr(bound_d);
        }
        // the closed-form helper must assemble the same number
        if (std::abs(propB_bound(fs.cover.size(), fs.m, tau.get_d(), tau.get_d()) - bound_d) >
            1e-9)
            pass = false;
    }
    std::string bs = "{";
    for (std::size_t i = 0; i < fs.cover.size(); ++i)
        bs += (i ? "," : "") + format_check_set(fs.cover[i]);
    bs += "}";
    rep.witness = "m=" + std::to_string(fs.m) + "; B=" + bs + "; syndromes=" +
                  std::to_string(fs.sigmas.size()) + "; failing pairs=" +
                  std::to_string(fs.failing.size()) + (fs.greedy ? "; greedy cover" : "");
    rep.pass = pass;
    out.report = std::move(rep);
    return out;
}

ExactBudget exact_budget_rep3(const Q& lambda, const Q& eta) {
    if (sgn(lambda) < 0 || lambda >= 1 || sgn(eta) < 0 || eta >= 1)
        throw std::invalid_argument("[verify] rates must lie in [0, 1)");
    StabilizerCode code = build_code({CodeFamily::repetition, 3});

    // Support-class objective coefficients: concentrate each class's mass on
    // its most damaging operator.
    std::array<Q, 8> w_fail{};
    std::array<std::array<Q, 8>, 3> w_sig{}; // check sets {c0}, {c1}, {c0,c1}
    for (std::uint64_t xm = 0; xm < 8; ++xm)
        for (std::uint64_t zm = 0; zm < 8; ++zm) {
            PauliOp op(mask_bits(3, xm), mask_bits(3, zm));
            std::uint64_t s = xm | zm;
            if (!is_correctable(code, op)) w_fail[s] = 1;
            BitVec sg = syndrome(code, op);
            std::uint64_t sm = (sg.get(0) ? 1u : 0u) | (sg.get(1) ? 2u : 0u);
            for (std::uint64_t x = 1; x < 4; ++x)
                if ((sm & x) == x) w_sig[x - 1][s] = 1;
        }

    auto verts = support_polytope_vertices(lambda);
    ExactBudget b;
    b.f1_star = lp_max(verts, w_fail);
    Q t_c0 = lp_max(verts, w_sig[0]);
    Q t_c1 = lp_max(verts, w_sig[1]);
    Q t_both = lp_max(verts, w_sig[2]);
    b.g1_sq = t_c0 * t_c0;
    if (t_c1 * t_c1 > b.g1_sq) b.g1_sq = t_c1 * t_c1;
    if (t_both > b.g1_sq) b.g1_sq = t_both;

    // Effective recovery class parameter from the exact flip distribution.
    auto flips = exact_iid_flips(code.n_checks(), eta);
    std::map<BitVec, Q> q_sigma;
    for (const auto& [p, y] : flips.entries) q_sigma[syndrome_repair(code, y)] += p;
    std::vector<std::pair<Q, BitVec>> sitems;
    for (const auto& [s, p] : q_sigma) sitems.emplace_back(p, s);
    b.tau1_sq = 0;
    for (const auto& [x, t] : subset_tails(sitems)) {
        Q v = x.count() == 1 ? t * t : t; // exponent 2/|x| with |x| in {1,2}
        if (v > b.tau1_sq) b.tau1_sq = v;
    }

    // Failing-pair structure, and the per-syndrome corrections are all
    // correctable so the standalone syndrome-class failure term vanishes.
    FailureStructure fs = failure_structure(code);
    b.cover_size = fs.cover.size();
    b.m = fs.m;
    for (const BitVec& s : fs.sigmas)
        if (!is_correctable(code, correction(code, s)))
            throw std::logic_error("[verify] table correction fails on its own syndrome");

    b.g1 = std::sqrt(b.g1_sq.get_d());
    b.tau1 = std::sqrt(b.tau1_sq.get_d());
    b.tau2 = 2.0 * std::sqrt(std::max(b.g1, b.tau1));
    auto f2s = [&](double x, double y) {
        if (b.cover_size == 0) return 0.0;
        return double(b.cover_size) * std::pow(2.0 * std::sqrt(std::max(x, y)), double(b.m));
    };
    b.delta1 = f2s(b.tau1, b.tau2);
    b.delta2 = b.f1_star.get_d() + f2s(b.g1, b.tau1);
    b.delta3 = 0.0;
    return b;
}

OracleReport check_lifetime_budget(const ExactBudget& budget, std::uint32_t rounds,
                                   double mc_failure, double mc_stderr,
                                   const std::string& instance) {
    double bound = lifetime_bound(rounds, budget.delta1, budget.delta2, budget.delta3);
    OracleReport rep;
    rep.proposition = "lifetime_budget";
    rep.instance = instance;
    rep.lhs = dstr(mc_failure);
    rep.rhs = dstr(bound + 3.0 * mc_stderr);
    rep.pass = mc_failure <= bound + 3.0 * mc_stderr;
    rep.witness = "delta1=" + dstr(budget.delta1) + " delta2=" + dstr(budget.delta2) +
                  " delta3=" + dstr(budget.delta3) + " rounds=" + std::to_string(rounds) +
                  " stderr=" + dstr(mc_stderr);
    return rep;
}

std::vector<OracleReport> verify_all(std::uint64_t seed) {
    std::vector<OracleReport> out;
    StabilizerCode rep3 = build_code({CodeFamily::repetition, 3});
    StabilizerCode rep5 = build_code({CodeFamily::repetition, 5});
    StabilizerCode rep2 = build_code({CodeFamily::repetition, 2});
    StabilizerCode t2 = build_code({CodeFamily::toric2d, 2});
    StabilizerCode t3 = build_code({CodeFamily::toric3d_z, 2});
    CounterRng rng(seed, 0);
    Q tenth(1, 10), hundredth(1, 100);

    out.push_back(check_recovery_replacement(
        rep3, product_coupling(exact_iid_flips(2, tenth), exact_iid_x_channel(3, tenth)),
        "repetition-3, iid flips 1/10, iid X noise 1/10, independent coupling"));
    {
        auto j = product_coupling(exact_iid_flips(2, tenth), exact_iid_x_channel(3, tenth));
        random_shuffles(j.weight, 6, rng, 0);
        out.push_back(check_recovery_replacement(
            rep3, j, "repetition-3, iid flips 1/10, iid X noise 1/10, shuffled coupling"));
    }
    {
        auto j = product_coupling(random_flip_distribution(4, rng, 1),
                                  random_local_channel(5, tenth, rng, 1));
        random_shuffles(j.weight, 8, rng, 1);
        out.push_back(check_recovery_replacement(
            rep5, j, "repetition-5, random flips, random local noise, shuffled coupling"));
    }

    out.push_back(check_composition_bounds(4, hundredth, hundredth, 300, seed));
    out.push_back(check_composition_bounds(3, hundredth, Q(1, 50), 200, seed + 1));

    for (std::uint64_t t = 0; t < 3; ++t)
        out.push_back(check_associativity(
            rep3, random_three_round_joint(3, rng, 100 + t),
            "repetition-3, random three-round joint " + std::to_string(t)));

    out.push_back(check_syndrome_assignment(rep3, 0, seed));
    out.push_back(check_syndrome_assignment(t2, 2000, seed));

    {
        StochasticChannel<Q> tight;
        tight.entries.push_back({Q(9, 10), PauliOp::identity(3)});
        tight.entries.push_back({Q(1, 10), PauliOp::parse("XXX")});
        out.push_back(
            check_projection_approximation(rep3, tight, "repetition-3 {9/10 I, 1/10 XXX}"));
        StochasticChannel<Q> safe;
        safe.entries.push_back({Q(99, 100), PauliOp::identity(3)});
        safe.entries.push_back({Q(1, 100), PauliOp::parse("XII")});
        out.push_back(
            check_projection_approximation(rep3, safe, "repetition-3 all-correctable"));
        out.push_back(check_projection_approximation(rep5, exact_iid_x_channel(5, tenth),
                                                     "repetition-5 iid X noise 1/10"));
        out.push_back(check_projection_approximation(
            rep5, random_local_channel(5, tenth, rng, 2), "repetition-5 random local"));
    }

    out.push_back(check_repair_linearity(rep3, 2, 50, seed));
    out.push_back(check_repair_linearity(rep5, 2, 50, seed));
    out.push_back(check_repair_linearity(t2, 2, 100, seed));
    out.push_back(check_repair_linearity(t3, 2, 100, seed));

    out.push_back(find_structured_failure_bound(rep3, hundredth).report);
    out.push_back(find_structured_failure_bound(rep2, hundredth).report);
    out.push_back(find_structured_failure_bound(t2, hundredth).report);

    for (const Q& rate : {hundredth, Q(1, 100000000)}) {
        ExactBudget budget = exact_budget_rep3(rate, rate);
        for (std::uint32_t rounds : {1u, 5u, 10u}) {
            MemoryRunConfig cfg;
            cfg.code_id = {CodeFamily::repetition, 3};
            cfg.noise.kind = NoiseKind::iid_local;
            cfg.noise.lambda = rate.get_d();
            cfg.noise.eta = rate.get_d();
            cfg.noise.seed = seed;
            cfg.rounds = rounds;
            cfg.trials = 3000;
            cfg.seed = seed;
            cfg.record_rounds = false;
            FailureEstimate est = estimate_failure(cfg);
            double se = std::sqrt(est.mean * (1.0 - est.mean) / double(est.trials));
            out.push_back(check_lifetime_budget(
                budget, rounds, est.mean, se,
                "repetition-3 lambda=eta=" + qstr(rate) + " rounds=" +
                    std::to_string(rounds) + " trials=" + std::to_string(est.trials)));
        }
    }
    return out;
}

std::string reports_to_json(const std::vector<OracleReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const OracleReport& r : reports) {
        arr.push_back({{"proposition", r.proposition},
                       {"instance", r.instance},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"pass", r.pass},
                       {"witness", r.witness}});
        all = all && r.pass;
    }
    nlohmann::json j;
    j["all_pass"] = all;
    j["reports"] = std::move(arr);
    return j.dump(2);
}

} // namespace ssqec

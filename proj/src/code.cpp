#include "ssqec/code.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <set>

namespace ssqec {

std::string family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::repetition: return "repetition";
        case CodeFamily::toric2d: return "toric2d";
        case CodeFamily::toric3d_z: return "toric3d_z";
    }
    throw std::invalid_argument("[code] unknown family enum");
}

CodeFamily family_from_name(const std::string& s) {
    if (s == "repetition") return CodeFamily::repetition;
    if (s == "toric2d") return CodeFamily::toric2d;
    if (s == "toric3d_z") return CodeFamily::toric3d_z;
    throw std::invalid_argument("[code] unknown family '" + s + "'");
}

namespace {

F2Matrix identity_matrix(std::size_t k) {
    F2Matrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        BitVec r(k);
        r.set(i, true);
        m.add_row(r);
    }
    return m;
}

void finalize(StabilizerCode& code) {
    code.gauge_span = F2Span(2 * code.n);
    for (const PauliOp& g : code.gauge_gens)
        code.gauge_span.add(code.symplectic(g));
}

// Shortest signed displacement from a to b on a ring of size L;
// ties (L even, |delta| = L/2) resolve to the positive direction.
long ring_delta(std::size_t a, std::size_t b, std::size_t L) {
    long fwd = (long(b) - long(a) + long(L)) % long(L);
    if (2 * fwd <= long(L)) return fwd;
    return fwd - long(L);
}

std::size_t ring_dist(std::size_t a, std::size_t b, std::size_t L) {
    long d = ring_delta(a, b, L);
    return std::size_t(d < 0 ? -d : d);
}

// --------------------------------------------------------------------------
// Repetition code on a line: checks Z_i Z_{i+1}.
// --------------------------------------------------------------------------

StabilizerCode build_repetition(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("[code] repetition needs n >= 2");
    if (n > 13)
        throw std::runtime_error("[code] repetition table beyond capacity (n <= 13)");
    StabilizerCode code;
    code.family = CodeFamily::repetition;
    code.size_param = n;
    code.n = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        PauliOp c(n);
        c.z.set(i, true);
        c.z.set(i + 1, true);
        code.checks.push_back(c);
    }
    code.gauge_gens = code.checks;
    PauliOp lx(n), lz(n);
    for (std::size_t i = 0; i < n; ++i) lx.x.set(i, true);
    lz.z.set(0, true);
    code.logical_reps.emplace_back(lx, lz);
    code.measured_ops = code.checks;
    code.outcome_map = identity_matrix(n - 1);
    code.metachecks = F2Matrix(n - 1);
    finalize(code);
    code.correction_table = build_correction_table(code, /*pure_x=*/true);
    return code;
}

// --------------------------------------------------------------------------
// 2D torus: qubits on edges, vertex Z-stars, plaquette X-checks.
// Edge (d,i,j): d=0 runs from vertex (i,j) to (i+1,j), d=1 to (i,j+1).
// --------------------------------------------------------------------------

struct T2 {
    std::size_t L;
    std::size_t wrap(long k) const { return std::size_t(((k % long(L)) + long(L)) % long(L)); }
    std::size_t vid(std::size_t i, std::size_t j) const { return j * L + i; }
    std::size_t eid(int d, long i, long j) const {
        return (wrap(j) * L + wrap(i)) * 2 + std::size_t(d);
    }
    std::size_t n_qubits() const { return 2 * L * L; }

    std::array<std::size_t, 4> star_edges(std::size_t i, std::size_t j) const {
        return {eid(0, long(i), long(j)), eid(0, long(i) - 1, long(j)),
                eid(1, long(i), long(j)), eid(1, long(i), long(j) - 1)};
    }
    std::array<std::size_t, 4> plaq_edges(std::size_t i, std::size_t j) const {
        return {eid(0, long(i), long(j)), eid(0, long(i), long(j) + 1),
                eid(1, long(i), long(j)), eid(1, long(i) + 1, long(j))};
    }
};

StabilizerCode build_toric2d(std::size_t L) {
    if (L < 2)
        throw std::invalid_argument("[code] toric2d needs L >= 2");
    T2 t{L};
    StabilizerCode code;
    code.family = CodeFamily::toric2d;
    code.size_param = L;
    code.n = t.n_qubits();
    // Vertex checks first (indices [0, L^2)), then plaquettes.
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t i = 0; i < L; ++i) {
            PauliOp c(code.n);
            for (std::size_t e : t.star_edges(i, j)) c.z.set(e, true);
            code.checks.push_back(c);
        }
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t i = 0; i < L; ++i) {
            PauliOp c(code.n);
            for (std::size_t e : t.plaq_edges(i, j)) c.x.set(e, true);
            code.checks.push_back(c);
        }
    code.gauge_gens = code.checks;

    PauliOp lx1(code.n), lz1(code.n), lx2(code.n), lz2(code.n);
    for (std::size_t i = 0; i < L; ++i) lx1.x.set(t.eid(0, long(i), 0), true);
    for (std::size_t j = 0; j < L; ++j) lz1.z.set(t.eid(0, 0, long(j)), true);
    for (std::size_t j = 0; j < L; ++j) lx2.x.set(t.eid(1, 0, long(j)), true);
    for (std::size_t i = 0; i < L; ++i) lz2.z.set(t.eid(1, long(i), 0), true);
    code.logical_reps.emplace_back(lx1, lz1);
    code.logical_reps.emplace_back(lx2, lz2);

    code.measured_ops = code.checks;
    code.outcome_map = identity_matrix(code.checks.size());
    code.metachecks = F2Matrix(code.checks.size());
    finalize(code);
    return code;
}

// Minimum-total-length perfect matching of flagged sites under the torus
// taxicab metric.  Up to 12 sites this is exact (subset DP, ties resolved
// toward the lexicographically first pairing); larger sets fall back to
// greedy closest-pair with index tie-breaks.
using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

PairList min_weight_pairs(const std::vector<std::size_t>& flagged,
                          const std::function<std::size_t(std::size_t, std::size_t)>& dist) {
    PairList out;
    const std::size_t k = flagged.size();
    if (k == 0) return out;

    if (k <= 12) {
        std::vector<std::vector<std::size_t>> d(k, std::vector<std::size_t>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                d[i][j] = d[j][i] = dist(flagged[i], flagged[j]);
        const std::size_t full = std::size_t(1) << k;
        constexpr std::size_t inf = std::size_t(-1);
        std::vector<std::size_t> cost(full, inf);
        std::vector<std::pair<std::uint8_t, std::uint8_t>> choice(full, {0, 0});
        cost[0] = 0;
        for (std::size_t mask = 1; mask < full; ++mask) {
            std::size_t i = 0;
            while (!((mask >> i) & 1)) ++i;
            for (std::size_t j = i + 1; j < k; ++j) {
                if (!((mask >> j) & 1)) continue;
                std::size_t rest = mask & ~((std::size_t(1) << i) | (std::size_t(1) << j));
                if (cost[rest] == inf) continue;
                std::size_t c = cost[rest] + d[i][j];
                if (c < cost[mask]) {
                    cost[mask] = c;
                    choice[mask] = {std::uint8_t(i), std::uint8_t(j)};
                }
            }
        }
        std::size_t mask = full - 1;
        while (mask) {
            auto [i, j] = choice[mask];
            out.emplace_back(flagged[i], flagged[j]);
            mask &= ~((std::size_t(1) << i) | (std::size_t(1) << j));
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::vector<std::size_t> left = flagged;
    while (!left.empty()) {
        std::size_t bi = 0, bj = 1;
        std::size_t best = std::size_t(-1);
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = i + 1; j < left.size(); ++j) {
                std::size_t dd = dist(left[i], left[j]);
                if (dd < best) { best = dd; bi = i; bj = j; }
            }
        out.emplace_back(left[bi], left[bj]);
        left.erase(left.begin() + bj);
        left.erase(left.begin() + bi);
    }
    return out;
}

PauliOp decode_toric2d(std::size_t L, BitVec sigma) {
    T2 t{L};
    std::size_t V = L * L;
    PauliOp out(t.n_qubits());

    // True syndromes have even parity per sector (each sector's checks
    // multiply to identity); canonicalize anything else so the decoder is
    // total over observed syndromes.
    std::size_t vpar = 0, ppar = 0;
    for (std::size_t v = 0; v < V; ++v) vpar ^= sigma.get(v);
    for (std::size_t p = 0; p < V; ++p) ppar ^= sigma.get(V + p);
    if (vpar) sigma.flip(0);
    if (ppar) sigma.flip(V);

    auto coords = [&](std::size_t site) {
        return std::pair<std::size_t, std::size_t>(site % L, site / L);
    };
    auto taxicab = [&](std::size_t a, std::size_t b) {
        auto [ai, aj] = coords(a);
        auto [bi, bj] = coords(b);
        return ring_dist(ai, bi, L) + ring_dist(aj, bj, L);
    };

    // X-chains between flagged vertices, walking the direct lattice.
    std::vector<std::size_t> fv;
    for (std::size_t v = 0; v < V; ++v)
        if (sigma.get(v)) fv.push_back(v);
    for (auto [a, b] : min_weight_pairs(fv, taxicab)) {
        auto [i, j] = coords(a);
        auto [bi, bj] = coords(b);
        long dx = ring_delta(i, bi, L), dy = ring_delta(j, bj, L);
        for (; dx > 0; --dx) { out.x.flip(t.eid(0, long(i), long(j))); i = t.wrap(long(i) + 1); }
        for (; dx < 0; ++dx) { out.x.flip(t.eid(0, long(i) - 1, long(j))); i = t.wrap(long(i) - 1); }
        for (; dy > 0; --dy) { out.x.flip(t.eid(1, long(i), long(j))); j = t.wrap(long(j) + 1); }
        for (; dy < 0; ++dy) { out.x.flip(t.eid(1, long(i), long(j) - 1)); j = t.wrap(long(j) - 1); }
    }

    // Z-chains between flagged plaquettes, walking the dual lattice.
    std::vector<std::size_t> fp;
    for (std::size_t p = 0; p < V; ++p)
        if (sigma.get(V + p)) fp.push_back(p);
    for (auto [a, b] : min_weight_pairs(fp, taxicab)) {
        auto [i, j] = coords(a);
        auto [bi, bj] = coords(b);
        long dx = ring_delta(i, bi, L), dy = ring_delta(j, bj, L);
        for (; dx > 0; --dx) { out.z.flip(t.eid(1, long(i) + 1, long(j))); i = t.wrap(long(i) + 1); }
        for (; dx < 0; ++dx) { out.z.flip(t.eid(1, long(i), long(j))); i = t.wrap(long(i) - 1); }
        for (; dy > 0; --dy) { out.z.flip(t.eid(0, long(i), long(j) + 1)); j = t.wrap(long(j) + 1); }
        for (; dy < 0; ++dy) { out.z.flip(t.eid(0, long(i), long(j))); j = t.wrap(long(j) - 1); }
    }

    return out;
}

// --------------------------------------------------------------------------
// 3D torus, X-error sector: qubits on edges, Z-checks on faces (plaquettes),
// metachecks on cubes.  Edge (a,w) runs from vertex w to w+e_a; face (a,w)
// has normal a and corner w; flagged faces of any X error form closed loops
// of the dual lattice (face (a,w) = dual edge between cubes w-e_a and w).
// --------------------------------------------------------------------------

struct T3 {
    std::size_t L;
    std::size_t L3() const { return L * L * L; }
    std::size_t wrap(long k) const { return std::size_t(((k % long(L)) + long(L)) % long(L)); }
    std::size_t lin(long x, long y, long z) const {
        return (wrap(z) * L + wrap(y)) * L + wrap(x);
    }
    std::array<long, 3> coords(std::size_t v) const {
        return {long(v % L), long((v / L) % L), long(v / (L * L))};
    }
    std::size_t eid(std::size_t a, long x, long y, long z) const {
        return a * L3() + lin(x, y, z);
    }
    std::size_t fid(std::size_t a, long x, long y, long z) const {
        return a * L3() + lin(x, y, z);
    }

    std::array<std::size_t, 4> face_edges(std::size_t f) const {
        std::size_t a = f / L3();
        auto [x, y, z] = coords(f % L3());
        std::size_t b = (a == 0) ? 1 : 0;
        std::size_t c = (a == 2) ? 1 : 2;
        long w[3] = {x, y, z};
        auto at = [&](std::size_t dir, long dx, long dy, long dz) {
            return eid(dir, w[0] + dx, w[1] + dy, w[2] + dz);
        };
        long sb[3] = {0, 0, 0}, sc[3] = {0, 0, 0};
        sb[b] = 1;
        sc[c] = 1;
        return {at(b, 0, 0, 0), at(c, 0, 0, 0),
                at(b, sc[0], sc[1], sc[2]), at(c, sb[0], sb[1], sb[2])};
    }

    // The four faces containing edge (b,u): for each a != b, with c the
    // third axis, faces (a,u) and (a,u-e_c).
    std::array<std::size_t, 4> edge_faces(std::size_t e) const {
        std::size_t b = e / L3();
        auto [x, y, z] = coords(e % L3());
        std::array<std::size_t, 4> out{};
        std::size_t k = 0;
        for (std::size_t a = 0; a < 3; ++a) {
            if (a == b) continue;
            std::size_t c = 3 - a - b;
            long d[3] = {0, 0, 0};
            d[c] = -1;
            out[k++] = fid(a, x, y, z);
            out[k++] = fid(a, x + d[0], y + d[1], z + d[2]);
        }
        return out;
    }

    std::array<std::size_t, 6> star_edges(std::size_t v) const {
        auto [x, y, z] = coords(v);
        return {eid(0, x, y, z), eid(0, x - 1, y, z),
                eid(1, x, y, z), eid(1, x, y - 1, z),
                eid(2, x, y, z), eid(2, x, y, z - 1)};
    }

    std::array<std::size_t, 6> cube_faces(std::size_t v) const {
        auto [x, y, z] = coords(v);
        return {fid(0, x, y, z), fid(0, x + 1, y, z),
                fid(1, x, y, z), fid(1, x, y + 1, z),
                fid(2, x, y, z), fid(2, x, y, z + 1)};
    }

    // Faces with normal a whose corner lies in the plane w_a = 0; the parity
    // of a syndrome's overlap with this set is its winding across a, zero
    // for every realizable syndrome.
    BitVec winding_plane(std::size_t a) const {
        BitVec m(3 * L3());
        for (std::size_t v = 0; v < L3(); ++v) {
            auto [x, y, z] = coords(v);
            long w[3] = {x, y, z};
            if (w[a] == 0) m.set(fid(a, x, y, z), true);
        }
        return m;
    }

    // A non-contractible dual loop winding once across direction a.
    BitVec wrap_line(std::size_t a) const {
        BitVec m(3 * L3());
        for (std::size_t k = 0; k < L; ++k) {
            long w[3] = {0, 0, 0};
            w[a] = long(k);
            m.set(fid(a, w[0], w[1], w[2]), true);
        }
        return m;
    }
};

StabilizerCode build_toric3d(std::size_t L) {
    if (L < 2)
        throw std::invalid_argument("[code] toric3d_z needs L >= 2");
    T3 t{L};
    std::size_t N = 3 * t.L3();
    StabilizerCode code;
    code.family = CodeFamily::toric3d_z;
    code.size_param = L;
    code.n = N;

    for (std::size_t f = 0; f < N; ++f) {
        PauliOp c(N);
        for (std::size_t e : t.face_edges(f)) c.z.set(e, true);
        code.checks.push_back(c);
    }
    code.gauge_gens = code.checks;
    for (std::size_t v = 0; v < t.L3(); ++v) {
        PauliOp s(N);
        for (std::size_t e : t.star_edges(v)) s.x.set(e, true);
        code.gauge_gens.push_back(s);
    }

    // Logical pair per direction: X on the sheet of a-oriented edges in the
    // plane w_a = 0 (weight L^2), Z on the straight line of a-oriented edges
    // along the a-axis (weight L).
    for (std::size_t a = 0; a < 3; ++a) {
        PauliOp lx(N), lz(N);
        for (std::size_t v = 0; v < t.L3(); ++v) {
            auto [x, y, z] = t.coords(v);
            long w[3] = {x, y, z};
            if (w[a] == 0) lx.x.set(t.eid(a, x, y, z), true);
        }
        for (std::size_t k = 0; k < L; ++k) {
            long w[3] = {0, 0, 0};
            w[a] = long(k);
            lz.z.set(t.eid(a, w[0], w[1], w[2]), true);
        }
        code.logical_reps.emplace_back(lx, lz);
    }

    code.measured_ops = code.checks;
    code.outcome_map = identity_matrix(N);
    code.metachecks = F2Matrix(N);
    for (std::size_t v = 0; v < t.L3(); ++v) {
        BitVec row(N);
        for (std::size_t f : t.cube_faces(v)) row.set(f, true);
        code.metachecks.add_row(row);
    }

    // Row-reduce the face-by-edge incidence system once, so decoding can
    // solve incidence * y = sigma by back-substitution.
    F2Matrix inc(N);
    for (std::size_t f = 0; f < N; ++f) {
        BitVec row(N);
        for (std::size_t e : t.face_edges(f)) row.set(e, true);
        inc.add_row(row);
    }
    F2Matrix u = identity_matrix(N);
    std::vector<BitVec> rows = inc.rows;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < N && r < N; ++c) {
        std::size_t sel = N;
        for (std::size_t i = r; i < N; ++i)
            if (rows[i].get(c)) { sel = i; break; }
        if (sel == N) continue;
        std::swap(rows[r], rows[sel]);
        std::swap(u.rows[r], u.rows[sel]);
        for (std::size_t i = 0; i < N; ++i)
            if (i != r && rows[i].get(c)) {
                rows[i] ^= rows[r];
                u.rows[i] ^= u.rows[r];
            }
        pivots.push_back(c);
        ++r;
    }
    code.solver_row_ops = std::move(u);
    code.solver_echelon = F2Matrix(N);
    code.solver_echelon.rows = std::move(rows);
    code.solver_pivot_cols = std::move(pivots);

    finalize(code);
    return code;
}

// Depth-limited search for an edge set of size <= limit whose toggled faces
// equal sigma.  Branches on the lowest flagged face: any solution must use an
// odd number of its four boundary edges, so at least one.  Called with
// increasing limits, the first hit is minimum-weight; tie-breaks follow the
// fixed face/edge scan order.
bool cover_exact(const T3& t, BitVec& sigma, std::size_t limit,
                 std::vector<std::size_t>& chosen) {
    if (sigma.none()) return true;
    if (sigma.count() > 4 * limit) return false;
    std::size_t f = sigma.set_bits().front();
    for (std::size_t e : t.face_edges(f)) {
        if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) continue;
        for (std::size_t g : t.edge_faces(e)) sigma.flip(g);
        chosen.push_back(e);
        if (cover_exact(t, sigma, limit - 1, chosen)) return true;
        chosen.pop_back();
        for (std::size_t g : t.edge_faces(e)) sigma.flip(g);
    }
    return false;
}

PauliOp decode_toric3d(const StabilizerCode& code, BitVec sigma) {
    T3 t{code.size_param};
    std::size_t N = 3 * t.L3();
    PauliOp out(N);

    for (std::size_t a = 0; a < 3; ++a)
        if (sigma.dot(t.winding_plane(a)))
            sigma ^= t.wrap_line(a);
    if (sigma.none()) return out;

    // Reject face patterns no edge set can produce before searching.
    BitVec s2 = code.solver_row_ops.apply(sigma);
    std::size_t rank = code.solver_pivot_cols.size();
    for (std::size_t i = rank; i < s2.size(); ++i)
        if (s2.get(i))
            throw std::invalid_argument("[code] syndrome not realizable for " +
                                        code.name());

    // Exact minimum-weight cover for moderate syndromes.
    for (std::size_t limit = 1; limit <= 8; ++limit) {
        std::vector<std::size_t> chosen;
        BitVec work = sigma;
        if (cover_exact(t, work, limit, chosen)) {
            for (std::size_t e : chosen) out.x.flip(e);
            return out;
        }
    }

    // Heavy remainder: greedy pass first -- flipping edge e toggles its four
    // faces, and any edge overlapping sigma in >= 3 strictly shrinks it.
    while (sigma.any()) {
        std::set<std::size_t> cand;
        sigma.for_each_set([&](std::size_t f) {
            for (std::size_t e : t.face_edges(f)) cand.insert(e);
        });
        std::size_t best_e = N, best_ov = 0;
        for (std::size_t e : cand) {
            std::size_t ov = 0;
            for (std::size_t f : t.edge_faces(e)) ov += sigma.get(f);
            if (ov > best_ov) { best_ov = ov; best_e = e; }
        }
        if (best_ov < 3) break;
        for (std::size_t f : t.edge_faces(best_e)) sigma.flip(f);
        out.x.flip(best_e);
    }

    if (sigma.any()) {
        // Anything left is realizable (checked above); take the particular
        // solution of the precomputed reduction.
        BitVec rem = code.solver_row_ops.apply(sigma);
        for (std::size_t i = 0; i < rank; ++i)
            if (rem.get(i)) out.x.flip(code.solver_pivot_cols[i]);
    }
    return out;
}

// Metasyndrome repair: pair flagged cubes along staircase dual paths.
// Crossing from cube u toward +a toggles face (a, u+e_a); toward -a,
// face (a, u).
void walk_axis(const T3& t, BitVec& rho, long u[3], std::size_t a, long d) {
    for (; d > 0; --d) {
        long w[3] = {u[0], u[1], u[2]};
        w[a] += 1;
        rho.flip(t.fid(a, w[0], w[1], w[2]));
        u[a] = long(t.wrap(w[a]));
    }
    for (; d < 0; ++d) {
        rho.flip(t.fid(a, u[0], u[1], u[2]));
        u[a] = long(t.wrap(u[a] - 1));
    }
}

// Flip estimate from the violated-cube pattern m plus the three winding
// parities of the observed outcome.  Both inputs are linear in the outcome
// and vanish on every noiseless outcome, so the repair identity is exact.
// Matching the estimate's winding to the outcome's keeps the repaired
// syndrome realizable: pairs whose estimated route went the wrong way around
// the torus are rerouted rather than leaving a spurious wrapping defect for
// the decoder.  For each axis the direct route and its complement jointly
// cross the winding plane exactly once, so rerouting any single pair flips
// that axis parity; the widest span is rerouted because its complement is
// shortest.  With no violated cubes a genuine wrapped flip line is the only
// explanation, so the canonical one is added directly.
BitVec repair_toric3d(std::size_t L, const BitVec& m, const bool wind[3]) {
    T3 t{L};
    BitVec rho(3 * t.L3());
    auto dist = std::function<std::size_t(std::size_t, std::size_t)>(
        [&](std::size_t a, std::size_t b) {
            auto ca = t.coords(a), cb = t.coords(b);
            std::size_t d = 0;
            for (int k = 0; k < 3; ++k)
                d += ring_dist(std::size_t(ca[k]), std::size_t(cb[k]), L);
            return d;
        });

    struct Route {
        long start[3];   // source cube
        long delta[3];   // signed steps per axis, shortest-way
    };
    std::vector<Route> routes;
    for (auto [from, to] : min_weight_pairs(m.set_bits(), dist)) {
        auto cu = t.coords(from);
        auto cv = t.coords(to);
        Route r;
        for (std::size_t a = 0; a < 3; ++a) {
            r.start[a] = cu[a];
            r.delta[a] = ring_delta(std::size_t(cu[a]), std::size_t(cv[a]), L);
        }
        long u[3] = {r.start[0], r.start[1], r.start[2]};
        for (std::size_t a = 0; a < 3; ++a) walk_axis(t, rho, u, a, r.delta[a]);
        routes.push_back(r);
    }

    for (std::size_t a = 0; a < 3; ++a) {
        bool have = rho.dot(t.winding_plane(a));
        if (have == wind[a]) continue;
        if (routes.empty()) {
            rho ^= t.wrap_line(a);
            continue;
        }
        std::size_t best = 0;
        for (std::size_t p = 1; p < routes.size(); ++p)
            if (std::labs(routes[p].delta[a]) > std::labs(routes[best].delta[a])) best = p;
        Route& r = routes[best];
        long u[3];
        for (std::size_t k = 0; k < 3; ++k)
            u[k] = k < a ? long(t.wrap(r.start[k] + r.delta[k])) : r.start[k];
        walk_axis(t, rho, u, a, r.delta[a]);  // cancel the original leg
        long comp = r.delta[a] > 0 ? r.delta[a] - long(L) : r.delta[a] + long(L);
        if (r.delta[a] == 0) comp = long(L);
        u[a] = r.start[a];
        walk_axis(t, rho, u, a, comp);
        r.delta[a] = comp;
    }
    return rho;
}

} // namespace

StabilizerCode build_code(const CodeId& id) {
    switch (id.family) {
        case CodeFamily::repetition: return build_repetition(id.size);
        case CodeFamily::toric2d: return build_toric2d(id.size);
        case CodeFamily::toric3d_z: return build_toric3d(id.size);
    }
    throw std::invalid_argument("[code] unknown family enum");
}

BitVec syndrome(const StabilizerCode& code, const PauliOp& e) {
    if (e.n() != code.n)
        throw std::invalid_argument("[code] syndrome: dimension mismatch for " + code.name());
    BitVec s(code.checks.size());
    for (std::size_t i = 0; i < code.checks.size(); ++i)
        if (!commutes(e, code.checks[i])) s.set(i, true);
    return s;
}

BitVec valid_outcome(const StabilizerCode& code, const PauliOp& e) {
    if (e.n() != code.n)
        throw std::invalid_argument("[code] valid_outcome: dimension mismatch for " + code.name());
    BitVec x(code.measured_ops.size());
    for (std::size_t j = 0; j < code.measured_ops.size(); ++j)
        if (!commutes(e, code.measured_ops[j])) x.set(j, true);
    return x;
}

PauliOp correction(const StabilizerCode& code, const BitVec& sigma) {
    if (sigma.size() != code.checks.size())
        throw std::invalid_argument("[code] correction: syndrome length mismatch for " +
                                    code.name());
    switch (code.family) {
        case CodeFamily::repetition: {
            auto it = code.correction_table.find(sigma);
            if (it == code.correction_table.end())
                throw std::out_of_range("[code] no correction entry for syndrome " +
                                        sigma.to_string());
            return it->second;
        }
        case CodeFamily::toric2d:
            return decode_toric2d(code.size_param, sigma);
        case CodeFamily::toric3d_z:
            return decode_toric3d(code, sigma);
    }
    throw std::invalid_argument("[code] unknown family enum");
}

bool is_correctable(const StabilizerCode& code, const PauliOp& e) {
    if (e.n() != code.n)
        throw std::invalid_argument("[code] is_correctable: dimension mismatch for " +
                                    code.name());
    PauliOp res = mul(correction(code, syndrome(code, e)), e);
    return code.gauge_span.contains(code.symplectic(res));
}

BitVec syndrome_repair(const StabilizerCode& code, const BitVec& x) {
    if (x.size() != code.measured_ops.size())
        throw std::invalid_argument("[code] syndrome_repair: outcome length mismatch for " +
                                    code.name());
    if (code.metachecks.n_rows() == 0)
        return code.outcome_map.apply(x);
    BitVec m = code.metachecks.apply(x);
    T3 t{code.size_param};
    bool wind[3];
    for (std::size_t a = 0; a < 3; ++a) wind[a] = x.dot(t.winding_plane(a));
    BitVec rho = repair_toric3d(code.size_param, m, wind);
    return code.outcome_map.apply(x ^ rho);
}

std::unordered_map<BitVec, PauliOp, BitVecHash>
build_correction_table(const StabilizerCode& code, bool pure_x, std::size_t sigma_cap) {
    std::size_t n = code.n;
    if ((pure_x && n > 20) || (!pure_x && n > 10))
        throw std::runtime_error("[code] correction-table enumeration beyond capacity");
    std::vector<PauliOp> all;
    std::size_t total = std::size_t(1) << (pure_x ? n : 2 * n);
    all.reserve(total);
    for (std::size_t v = 0; v < total; ++v) {
        PauliOp p(n);
        for (std::size_t q = 0; q < n; ++q) {
            if ((v >> q) & 1) p.x.set(q, true);
            if (!pure_x && ((v >> (n + q)) & 1)) p.z.set(q, true);
        }
        all.push_back(std::move(p));
    }
    std::sort(all.begin(), all.end());
    std::unordered_map<BitVec, PauliOp, BitVecHash> table;
    for (const PauliOp& p : all) {
        BitVec s = syndrome(code, p);
        if (!table.contains(s) && table.size() >= sigma_cap)
            throw std::runtime_error("[code] syndrome space beyond capacity");
        table.try_emplace(std::move(s), p);
    }
    return table;
}

} // namespace ssqec

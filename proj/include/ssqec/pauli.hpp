#pragma once

#include <string>
#include <tuple>

#include "ssqec/bitvec.hpp"

namespace ssqec {

// n-qubit Pauli operator in the binary symplectic picture: X-part and
// Z-part masks, overall phase discarded (it never affects syndromes,
// commutation, or stochastic mixtures of conjugations).
struct PauliOp {
    BitVec x, z;

    PauliOp() = default;
    explicit PauliOp(std::size_t n) : x(n), z(n) {}
    PauliOp(BitVec x_, BitVec z_) : x(std::move(x_)), z(std::move(z_)) {
        if (x.size() != z.size())
            throw std::invalid_argument("[pauli] X/Z mask length mismatch");
    }

    std::size_t n() const { return x.size(); }

    static PauliOp identity(std::size_t n) { return PauliOp(n); }
    static PauliOp single_x(std::size_t n, std::size_t q) {
        PauliOp p(n); p.x.set(q, true); return p;
    }
    static PauliOp single_z(std::size_t n, std::size_t q) {
        PauliOp p(n); p.z.set(q, true); return p;
    }

    bool is_identity() const { return x.none() && z.none(); }
    std::size_t weight() const { return (x | z).count(); }
    BitVec support() const { return x | z; }

    bool operator==(const PauliOp& o) const { return x == o.x && z == o.z; }
    bool operator!=(const PauliOp& o) const { return !(*this == o); }

    // Total order: weight first, then masks as integers.  Used for
    // deterministic tie-breaking wherever a canonical representative
    // is needed.
    bool operator<(const PauliOp& o) const {
        std::size_t wa = weight(), wb = o.weight();
        if (wa != wb) return wa < wb;
        if (x != o.x) return x < o.x;
        return z < o.z;
    }

    std::string to_string() const {
        std::string s(n(), 'I');
        for (std::size_t i = 0; i < n(); ++i) {
            bool bx = x.get(i), bz = z.get(i);
            if (bx && bz) s[i] = 'Y';
            else if (bx) s[i] = 'X';
            else if (bz) s[i] = 'Z';
        }
        return s;
    }
    static PauliOp parse(const std::string& s) {
        PauliOp p(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            switch (s[i]) {
                case 'I': break;
                case 'X': p.x.set(i, true); break;
                case 'Z': p.z.set(i, true); break;
                case 'Y': p.x.set(i, true); p.z.set(i, true); break;
                default:
                    throw std::invalid_argument("[pauli] bad character '" +
                                                std::string(1, s[i]) + "' in '" + s + "'");
            }
        }
        return p;
    }

    std::size_t hash() const { return x.hash() * 1000003u ^ z.hash(); }
};

// Product up to phase: masks XOR.
inline PauliOp mul(const PauliOp& a, const PauliOp& b) {
    return PauliOp(a.x ^ b.x, a.z ^ b.z);
}

// Symplectic inner product: 0 iff the operators commute.
inline bool commutes(const PauliOp& a, const PauliOp& b) {
    return !(a.x.dot(b.z) ^ a.z.dot(b.x));
}

struct PauliOpHash {
    std::size_t operator()(const PauliOp& p) const { return p.hash(); }
};

} // namespace ssqec

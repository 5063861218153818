#pragma once

#include <optional>
#include <vector>

#include "ssqec/bitvec.hpp"

namespace ssqec {

// Row-major matrix over GF(2); each row is a BitVec of equal length.
struct F2Matrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    F2Matrix() = default;
    explicit F2Matrix(std::size_t cols_) : cols(cols_) {}

    std::size_t n_rows() const { return rows.size(); }
    void add_row(BitVec r) {
        if (r.size() != cols)
            throw std::invalid_argument("[f2] row length mismatch");
        rows.push_back(std::move(r));
    }

    // y = M x, bit i = <row_i, x>.
    BitVec apply(const BitVec& x) const {
        if (x.size() != cols)
            throw std::invalid_argument("[f2] apply: vector length mismatch");
        BitVec y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].dot(x)) y.set(i, true);
        return y;
    }
};

// Incrementally built row-echelon basis for a subspace of GF(2)^n.
// Supports membership tests and reduction to a canonical coset
// representative (eliminate all pivot positions).
class F2Span {
public:
    F2Span() = default;
    explicit F2Span(std::size_t n) : n_(n) {}

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient() const { return n_; }

    // Reduce v by the basis: XOR away every pivot present in v.
    BitVec reduce(BitVec v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (v.get(pivots_[k])) v ^= basis_[k];
        return v;
    }

    bool contains(const BitVec& v) const { return reduce(v).none(); }

    // Insert v if independent; returns true if the span grew.
    bool add(const BitVec& v) {
        BitVec r = reduce(v);
        std::size_t p = r.lowest();
        if (p == r.size()) return false;
        // Back-substitute so earlier basis rows are clear at the new pivot.
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (basis_[k].get(p)) basis_[k] ^= r;
        basis_.push_back(std::move(r));
        pivots_.push_back(p);
        // Keep pivot order sorted for deterministic reduce().
        for (std::size_t k = basis_.size(); k-- > 1;) {
            if (pivots_[k - 1] > pivots_[k]) {
                std::swap(pivots_[k - 1], pivots_[k]);
                std::swap(basis_[k - 1], basis_[k]);
            }
        }
        return true;
    }

    const std::vector<BitVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t n_ = 0;
    std::vector<BitVec> basis_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t f2_rank(const F2Matrix& m) {
    F2Span s(m.cols);
    for (const BitVec& r : m.rows) s.add(r);
    return s.dim();
}

// Solve M x = b for one particular solution, if any.  Gaussian elimination
// on an augmented copy; deterministic pivot choice (lowest column first).
inline std::optional<BitVec> f2_solve(const F2Matrix& m, const BitVec& b) {
    if (b.size() != m.n_rows())
        throw std::invalid_argument("[f2] solve: rhs length mismatch");
    std::vector<BitVec> rows = m.rows;
    std::vector<bool> rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = b.get(i);

    std::vector<std::pair<std::size_t, std::size_t>> pivot_of; // (col, row)
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i].get(c)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        std::swap(rhs[r], rhs[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i].get(c)) {
                rows[i] ^= rows[r];
                rhs[i] = rhs[i] != rhs[r];
            }
        }
        pivot_of.emplace_back(c, r);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rhs[i]) return std::nullopt;

    BitVec x(m.cols);
    for (auto [c, row] : pivot_of)
        if (rhs[row]) x.set(c, true);
    return x;
}

} // namespace ssqec

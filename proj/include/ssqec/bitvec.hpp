#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssqec {

// Fixed-length bit vector packed into 64-bit words.  Bit 0 is the least
// significant bit of word 0; unused tail bits are kept zero so that
// word-level comparisons and popcounts need no masking.
class BitVec {
public:
    BitVec() : n_(0) {}
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_indices(std::size_t n, std::initializer_list<std::size_t> idx) {
        BitVec v(n);
        for (std::size_t i : idx) v.set(i, true);
        return v;
    }

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_.size(); }
    std::uint64_t word(std::size_t k) const { return w_[k]; }

    bool get(std::size_t i) const {
        check_index(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool b) {
        check_index(i);
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        check_index(i);
        w_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    BitVec& operator^=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    BitVec& operator|=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    friend BitVec operator|(BitVec a, const BitVec& b) { a |= b; return a; }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (std::uint64_t w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Parity of the intersection with `o`: <this, o> over GF(2).
    bool dot(const BitVec& o) const {
        check_size(o);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
        return std::popcount(acc) & 1u;
    }

    bool subset_of(const BitVec& o) const {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Integer comparison: most significant word first.
    bool operator<(const BitVec& o) const {
        check_size(o);
        for (std::size_t k = w_.size(); k-- > 0;)
            if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
        return false;
    }

    // Index of the lowest set bit, or size() if none.
    std::size_t lowest() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return n_;
    }

    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                f(k * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }
    std::vector<std::size_t> set_bits() const {
        std::vector<std::size_t> out;
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }
    static BitVec parse(const std::string& s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') v.set(i, true);
            else if (s[i] != '0')
                throw std::invalid_argument("[bitvec] bad character in '" + s + "'");
        }
        return v;
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (std::uint64_t w : w_)
            h ^= std::size_t(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    void check_index(std::size_t i) const {
        if (i >= n_) throw std::out_of_range("[bitvec] index " + std::to_string(i) +
                                             " out of range " + std::to_string(n_));
    }
    void check_size(const BitVec& o) const {
        if (n_ != o.n_) throw std::invalid_argument("[bitvec] size mismatch: " +
                                                    std::to_string(n_) + " vs " +
                                                    std::to_string(o.n_));
    }

    std::size_t n_;
    std::vector<std::uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

} // namespace ssqec

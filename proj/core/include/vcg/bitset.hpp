#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace vcg {

// Fixed-width bitset over 64-bit words. All binary operations require both
// operands to have the same width; trailing bits past size() stay zero.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    static Bitset all(std::size_t nbits) {
        Bitset b(nbits);
        for (std::size_t i = 0; i < b.w_.size(); ++i) b.w_[i] = ~uint64_t{0};
        b.trim();
        return b;
    }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    void set(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] |= uint64_t{1} << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    void clear() {
        for (auto& w : w_) w = 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    // set difference: this \ o
    Bitset& operator-=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    Bitset complement() const {
        Bitset r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::size_t intersection_count(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }
    bool is_subset_of(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // index of lowest set bit, or -1
    int find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }
    // lowest set bit > i, or -1
    int find_next(std::size_t i) const {
        ++i;
        if (i >= nbits_) return -1;
        std::size_t wi = i >> 6;
        uint64_t w = w_[wi] & (~uint64_t{0} << (i & 63));
        if (w) return int(wi * 64 + std::countr_zero(w));
        for (++wi; wi < w_.size(); ++wi)
            if (w_[wi]) return int(wi * 64 + std::countr_zero(w_[wi]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                f(i * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](std::size_t i) { v.push_back(int(i)); });
        return v;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.nbits_ == b.nbits_ && a.w_ == b.w_;
    }
    friend bool operator<(const Bitset& a, const Bitset& b) {
        if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
        // compare from the most significant word for a stable total order
        for (std::size_t i = a.w_.size(); i-- > 0;)
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
        return false;
    }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    void trim() {
        if (nbits_ % 64 != 0 && !w_.empty())
            w_.back() &= (~uint64_t{0}) >> (64 - nbits_ % 64);
    }

    std::size_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace vcg

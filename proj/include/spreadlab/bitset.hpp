#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spreadlab {

// Fixed-universe bitset over 64-bit words. Bits beyond size() are kept zero.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kBits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + kBits - 1) / kBits, 0) {}

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_.size(); }
    const Word* data() const { return w_.data(); }
    Word* data() { return w_.data(); }

    bool test(std::size_t i) const { return (w_[i / kBits] >> (i % kBits)) & 1U; }
    void set(std::size_t i) { w_[i / kBits] |= Word{1} << (i % kBits); }
    void reset(std::size_t i) { w_[i / kBits] &= ~(Word{1} << (i % kBits)); }

    void set_all() {
        for (auto& w : w_) w = ~Word{0};
        trim();
    }
    void clear() {
        for (auto& w : w_) w = 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (Word w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    // this := this \ o
    Bitset& subtract(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::size_t count_and(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
        return c;
    }
    std::size_t count_and(const Bitset& a, const Bitset& b) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(w_[i] & a.w_[i] & b.w_[i]));
        return c;
    }
    // popcount(this & ~o)
    std::size_t count_andnot(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(w_[i] & ~o.w_[i]));
        return c;
    }
    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // First set bit at or after i, or size() if none.
    std::size_t next(std::size_t i) const {
        if (i >= n_) return n_;
        std::size_t k = i / kBits;
        Word w = w_[k] & (~Word{0} << (i % kBits));
        while (true) {
            if (w) return k * kBits + static_cast<std::size_t>(std::countr_zero(w));
            if (++k == w_.size()) return n_;
            w = w_[k];
        }
    }
    std::size_t first() const { return next(0); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            Word w = w_[k];
            while (w) {
                f(k * kBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
        for (Word w : w_) h = (h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
        return h;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    friend bool operator<(const Bitset& a, const Bitset& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.w_ < b.w_;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

private:
    void trim() {
        if (n_ % kBits && !w_.empty()) w_.back() &= (Word{1} << (n_ % kBits)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<Word> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace spreadlab

#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace spreadlab {

using Point = std::uint32_t;

// Bijection on {0..n-1}, stored as its image sequence.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), Point{0}); }
    explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (Point p : img_) {
            if (p >= img_.size() || seen[p]) throw Error("image sequence is not a bijection");
            seen[p] = true;
        }
    }

    static Permutation identity(std::size_t n) { return Permutation(n); }

    // Caller guarantees a bijection.
    static Permutation unchecked(std::vector<Point> images) {
        Permutation p;
        p.img_ = std::move(images);
        return p;
    }

    // Builds from disjoint cycles given as 1-based point lists.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<long long>>& cycles) {
        Permutation p(n);
        std::vector<bool> used(n, false);
        for (const auto& c : cycles) {
            for (long long v : c) {
                if (v < 1 || static_cast<std::size_t>(v) > n)
                    throw Error("cycle point " + std::to_string(v) + " outside 1.." + std::to_string(n));
                if (used[v - 1]) throw Error("point " + std::to_string(v) + " repeated in cycles");
                used[v - 1] = true;
            }
            for (std::size_t i = 0; i < c.size(); ++i)
                p.img_[c[i] - 1] = static_cast<Point>(c[(i + 1) % c.size()] - 1);
        }
        return p;
    }

    std::size_t degree() const { return img_.size(); }
    Point operator()(Point p) const { return img_[p]; }
    Point operator[](Point p) const { return img_[p]; }
    const std::vector<Point>& images() const { return img_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    // Smallest moved point, or degree() for the identity.
    Point first_moved() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return static_cast<Point>(i);
        return static_cast<Point>(img_.size());
    }

    // Nontrivial cycles, each starting at its smallest point, ordered by that point. 1-based.
    std::vector<std::vector<long long>> cycles() const {
        std::vector<std::vector<long long>> out;
        std::vector<bool> seen(img_.size(), false);
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i] || img_[i] == i) continue;
            std::vector<long long> c;
            for (Point p = static_cast<Point>(i); !seen[p]; p = img_[p]) {
                seen[p] = true;
                c.push_back(static_cast<long long>(p) + 1);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& c : cycles()) {
            s += '(';
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) s += ' ';
                s += std::to_string(c[i]);
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
    std::vector<Point> img_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (Point x : p.images()) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

// (a o b)(p) = a(b(p)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
    std::vector<Point> img(a.degree());
    for (std::size_t p = 0; p < img.size(); ++p) img[p] = a(b(static_cast<Point>(p)));
    return Permutation::unchecked(std::move(img));
}

inline Permutation inverse(const Permutation& a) {
    std::vector<Point> img(a.degree());
    for (std::size_t p = 0; p < img.size(); ++p) img[a(static_cast<Point>(p))] = static_cast<Point>(p);
    return Permutation::unchecked(std::move(img));
}

inline Permutation power(const Permutation& a, unsigned long long e) {
    Permutation r = Permutation::identity(a.degree()), b = a;
    while (e) {
        if (e & 1) r = compose(r, b);
        b = compose(b, b);
        e >>= 1;
    }
    return r;
}

// g^-1 x g, i.e. the conjugate x^g acting as p -> g^-1(x(g(p))).
inline Permutation conjugate(const Permutation& x, const Permutation& g) {
    return compose(inverse(g), compose(x, g));
}

inline unsigned long long element_order(const Permutation& a) {
    unsigned long long l = 1;
    std::vector<bool> seen(a.degree(), false);
    for (std::size_t i = 0; i < a.degree(); ++i) {
        if (seen[i]) continue;
        unsigned long long len = 0;
        for (Point p = static_cast<Point>(i); !seen[p]; p = a(p)) {
            seen[p] = true;
            ++len;
        }
        l = std::lcm(l, len);
    }
    return l;
}

}  // namespace spreadlab

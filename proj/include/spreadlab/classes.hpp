#pragma once

#include "groupindex.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

namespace spreadlab {

struct ClassInfo {
    std::string name;
    Index rep = 0;
    unsigned long long element_order = 1;
    std::size_t size = 0;
};

// Conjugacy classes of an enumerated group. Class 0 is the identity class;
// classes are sorted by element order, then by size, then by representative.
struct ClassPartition {
    std::vector<std::uint32_t> class_of;  // element index -> class id
    std::vector<ClassInfo> classes;

    std::size_t count() const { return classes.size(); }
    std::size_t find(const std::string& name) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].name == name) return i;
        throw UnknownClass(name);
    }
};

// ATLAS-style letter suffix: 0 -> A, 25 -> Z, 26 -> AA.
inline std::string class_letters(std::size_t k) {
    std::string s;
    ++k;
    while (k) {
        --k;
        s.insert(s.begin(), static_cast<char>('A' + k % 26));
        k /= 26;
    }
    return s;
}

inline ClassPartition conjugacy_classes(const GroupIndex& index, const std::vector<Permutation>& generators) {
    const std::size_t n = index.order();
    std::vector<std::vector<Index>> conj;
    for (const auto& g : generators) conj.push_back(index.conjugation_table(g));

    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> raw(n, kUnset);
    struct Orbit {
        Index rep;
        std::size_t size;
    };
    std::vector<Orbit> orbits;
    std::vector<Index> stack;
    for (Index x = 0; x < n; ++x) {
        if (raw[x] != kUnset) continue;
        auto id = static_cast<std::uint32_t>(orbits.size());
        std::size_t size = 0;
        raw[x] = id;
        stack.assign(1, x);
        while (!stack.empty()) {
            Index y = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& t : conj) {
                Index z = t[y];
                if (raw[z] == kUnset) {
                    raw[z] = id;
                    stack.push_back(z);
                }
            }
        }
        orbits.push_back({x, size});
    }

    std::vector<std::tuple<unsigned long long, std::size_t, Index, std::uint32_t>> key;
    for (std::uint32_t i = 0; i < orbits.size(); ++i)
        key.emplace_back(index.order_of(orbits[i].rep), orbits[i].size, orbits[i].rep, i);
    std::sort(key.begin(), key.end());

    ClassPartition cp;
    std::vector<std::uint32_t> renum(orbits.size());
    unsigned long long last_order = 0;
    std::size_t letter = 0;
    for (std::uint32_t k = 0; k < key.size(); ++k) {
        auto [ord, size, rep, old] = key[k];
        letter = (ord == last_order) ? letter + 1 : 0;
        last_order = ord;
        renum[old] = k;
        cp.classes.push_back({std::to_string(ord) + class_letters(letter), rep, ord, size});
    }
    cp.class_of.resize(n);
    for (std::size_t x = 0; x < n; ++x) cp.class_of[x] = renum[raw[x]];
    return cp;
}

// Generation test by comparing |<x, y>| with the ambient order.
inline bool two_generates(const Permutation& x, const Permutation& y, const StabilizerChain& ambient) {
    return StabilizerChain({x, y}).order() == ambient.order();
}

inline bool two_generates(const GroupIndex& index, Index x, Index y, const StabilizerChain& ambient) {
    return two_generates(index.element(x), index.element(y), ambient);
}

}  // namespace spreadlab

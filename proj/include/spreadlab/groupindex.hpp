#pragma once

#include "stabchain.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace spreadlab {

using Index = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 100000;

// Dense numbering of all elements of a group; index 0 is the identity.
class GroupIndex {
public:
    GroupIndex() = default;

    std::size_t order() const { return elements_.size(); }
    std::size_t degree() const { return degree_; }
    const Permutation& element(Index i) const { return elements_[i]; }
    const std::vector<Permutation>& elements() const { return elements_; }

    Index index_of(const Permutation& g) const {
        auto it = lookup_.find(g);
        if (it == lookup_.end()) throw Error("permutation " + g.to_string() + " is not in the group");
        return it->second;
    }
    bool has(const Permutation& g) const { return lookup_.count(g) != 0; }

    Index multiply(Index a, Index b) const { return index_of(compose(elements_[a], elements_[b])); }
    Index inverse_of(Index a) const { return index_of(inverse(elements_[a])); }
    unsigned long long order_of(Index a) const { return element_order(elements_[a]); }

    // Table t with t[i] = index of g^-1 x_i g.
    std::vector<Index> conjugation_table(const Permutation& g) const {
        Permutation gi = inverse(g);
        std::vector<Index> t(elements_.size());
        for (std::size_t i = 0; i < elements_.size(); ++i)
            t[i] = index_of(compose(gi, compose(elements_[i], g)));
        return t;
    }

    friend GroupIndex enumerate_elements(const StabilizerChain& chain, std::size_t cap);

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> elements_;
    std::unordered_map<Permutation, Index, PermutationHash> lookup_;
};

inline GroupIndex enumerate_elements(const StabilizerChain& chain, std::size_t cap = kDefaultOrderCap) {
    BigInt n = chain.order();
    if (n > cap) throw OrderExceedsCap(to_decimal(n), cap);
    GroupIndex gi;
    gi.degree_ = chain.degree();
    gi.elements_.reserve(static_cast<std::size_t>(n));
    gi.lookup_.reserve(static_cast<std::size_t>(n));
    chain.for_each_element([&](const Permutation& g) {
        gi.lookup_.emplace(g, static_cast<Index>(gi.elements_.size()));
        gi.elements_.push_back(g);
    });
    return gi;
}

}  // namespace spreadlab

#pragma once

#include "bitset.hpp"
#include "groupdata.hpp"
#include "groupindex.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace spreadlab {

using ElementSet = Bitset;

struct SubgroupMask {
    Bitset members;           // over the group index
    std::size_t order = 0;
    std::size_t maximal_class = 0;  // position in GroupSpec::maximals
};

// Membership of every element in every expanded maximal subgroup.
struct SupportMatrix {
    std::size_t group_order = 0;
    std::vector<SubgroupMask> masks;
    std::vector<Bitset> rows;  // element -> set of masks containing it
    // Conjugation by each group generator, on elements and on masks.
    std::vector<std::vector<Index>> element_action;
    std::vector<std::vector<std::uint32_t>> mask_action;

    ElementSet empty_set() const { return ElementSet(group_order); }
    ElementSet nonidentity() const {
        ElementSet s(group_order);
        s.set_all();
        s.reset(0);
        return s;
    }
};

struct Expansion {
    std::vector<SubgroupMask> masks;
    std::vector<std::vector<Index>> element_action;
    std::vector<std::vector<std::uint32_t>> mask_action;
};

// Every conjugate of every maximal class representative, keyed by element mask.
inline Expansion expand_with_action(const GroupSpec& spec, const GroupIndex& index) {
    Expansion ex;
    const std::size_t n = index.order();
    for (const auto& g : spec.generators) ex.element_action.push_back(index.conjugation_table(g));

    std::unordered_map<Bitset, std::uint32_t, BitsetHash> seen;
    for (std::size_t c = 0; c < spec.maximals.size(); ++c) {
        const auto& mc = spec.maximals[c];
        Bitset rep(n);
        StabilizerChain(mc.generators).for_each_element([&](const Permutation& p) { rep.set(index.index_of(p)); });
        const std::size_t first = ex.masks.size();
        seen.emplace(rep, static_cast<std::uint32_t>(first));
        ex.masks.push_back({rep, rep.count(), c});
        for (std::size_t k = first; k < ex.masks.size(); ++k) {
            for (const auto& t : ex.element_action) {
                Bitset img(n);
                ex.masks[k].members.for_each([&](std::size_t x) { img.set(t[x]); });
                if (seen.count(img)) continue;
                seen.emplace(img, static_cast<std::uint32_t>(ex.masks.size()));
                ex.masks.push_back({std::move(img), ex.masks[k].order, c});
            }
        }
        const std::size_t got = ex.masks.size() - first;
        if (got != mc.count)
            throw CountMismatch("maximals[" + std::to_string(c) + "].count",
                                mc.name + ": declared " + std::to_string(mc.count) + " conjugates, found " +
                                    std::to_string(got));
    }
    for (const auto& t : ex.element_action) {
        std::vector<std::uint32_t> act(ex.masks.size());
        for (std::size_t k = 0; k < ex.masks.size(); ++k) {
            Bitset img(n);
            ex.masks[k].members.for_each([&](std::size_t x) { img.set(t[x]); });
            act[k] = seen.at(img);
        }
        ex.mask_action.push_back(std::move(act));
    }
    return ex;
}

inline std::vector<SubgroupMask> expand_maximal_conjugates(const GroupSpec& spec, const GroupIndex& index) {
    return expand_with_action(spec, index).masks;
}

inline SupportMatrix build_support_matrix(const GroupSpec& spec, const GroupIndex& index) {
    Expansion ex = expand_with_action(spec, index);
    SupportMatrix m;
    m.group_order = index.order();
    m.rows.assign(m.group_order, Bitset(ex.masks.size()));
    for (std::size_t k = 0; k < ex.masks.size(); ++k)
        ex.masks[k].members.for_each([&](std::size_t x) { m.rows[x].set(k); });
    m.masks = std::move(ex.masks);
    m.element_action = std::move(ex.element_action);
    m.mask_action = std::move(ex.mask_action);
    return m;
}

inline ElementSet support_of(Index x, const SupportMatrix& m) {
    if (x == 0) throw IdentityArgument();
    ElementSet s = m.empty_set();
    m.rows[x].for_each([&](std::size_t k) { s |= m.masks[k].members; });
    s.reset(0);
    return s;
}

inline ElementSet support_of_set(const ElementSet& X, const SupportMatrix& m) {
    if (X.size() && X.test(0)) throw IdentityArgument();
    Bitset hit(m.masks.size());
    X.for_each([&](std::size_t x) { hit |= m.rows[x]; });
    ElementSet s = m.empty_set();
    hit.for_each([&](std::size_t k) { s |= m.masks[k].members; });
    s.reset(0);
    return s;
}

// True iff every non-identity element shares a maximal subgroup with some member of X.
inline bool supports_all(const ElementSet& X, const SupportMatrix& m) {
    if (X.size() && X.test(0)) throw IdentityArgument();
    Bitset hit(m.masks.size());
    X.for_each([&](std::size_t x) { hit |= m.rows[x]; });
    for (std::size_t y = 1; y < m.group_order; ++y)
        if (!m.rows[y].intersects(hit)) return false;
    return true;
}

// Elements y of G^# with <x, y> = G for all x in X.
inline ElementSet mates_of(const ElementSet& X, const SupportMatrix& m) {
    ElementSet s = m.nonidentity();
    if (X.none()) return s;
    return s.subtract(support_of_set(X, m));
}

inline ElementSet element_set(const SupportMatrix& m, const std::vector<Index>& xs) {
    ElementSet s = m.empty_set();
    for (Index x : xs) s.set(x);
    return s;
}

}  // namespace spreadlab

#pragma once

#include "bigint.hpp"
#include "permutation.hpp"

#include <cstdint>
#include <vector>

namespace spreadlab {

// Base and strong generating set built by deterministic Schreier-Sims.
class StabilizerChain {
public:
    struct Level {
        Point base = 0;
        std::vector<Permutation> gens;     // strong generators fixing earlier base points
        std::vector<Point> orbit;          // orbit of base, in discovery order
        std::vector<int> slot;             // point -> index into transversal, or -1
        std::vector<Permutation> transversal;  // transversal[k](base) = orbit[k]
    };

    StabilizerChain() = default;

    explicit StabilizerChain(const std::vector<Permutation>& generators) {
        if (generators.empty()) throw Error("build_chain needs at least one generator");
        degree_ = generators.front().degree();
        for (const auto& g : generators)
            if (g.degree() != degree_) throw DegreeMismatch(degree_, g.degree());
        std::vector<Permutation> nontrivial;
        for (const auto& g : generators)
            if (!g.is_identity()) nontrivial.push_back(g);
        if (nontrivial.empty()) return;
        add_level(nontrivial.front().first_moved());
        levels_[0].gens = nontrivial;
        rebuild_orbit(0);
        complete();
    }

    std::size_t degree() const { return degree_; }
    const std::vector<Level>& levels() const { return levels_; }

    BigInt order() const {
        BigInt n = 1;
        for (const auto& l : levels_) n *= l.orbit.size();
        return n;
    }

    // Residue of g after sifting from level `from`, and the level where sifting stopped.
    std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const {
        for (std::size_t i = from; i < levels_.size(); ++i) {
            const Level& l = levels_[i];
            int k = l.slot[g(l.base)];
            if (k < 0) return {g, i};
            g = compose(inverse(l.transversal[k]), g);
        }
        return {g, levels_.size()};
    }

    bool contains(const Permutation& g) const {
        if (g.degree() != degree_) throw DegreeMismatch(degree_, g.degree());
        return sift(g).first.is_identity();
    }

    // All elements, as products t0 o t1 o ... with level 0 most significant.
    // Index 0 is the identity because each transversal starts with it.
    template <class F>
    void for_each_element(F&& f) const {
        std::vector<std::size_t> digit(levels_.size(), 0);
        std::vector<Permutation> partial(levels_.size() + 1, Permutation::identity(degree_));
        std::size_t depth = 0;
        // Iterative odometer over transversal indices.
        while (true) {
            for (; depth < levels_.size(); ++depth)
                partial[depth + 1] = compose(partial[depth], levels_[depth].transversal[digit[depth]]);
            f(partial[levels_.size()]);
            std::size_t i = levels_.size();
            while (i > 0) {
                --i;
                if (++digit[i] < levels_[i].transversal.size()) break;
                digit[i] = 0;
                if (i == 0) return;
            }
            if (levels_.empty()) return;
            depth = i;
        }
    }

private:
    void add_level(Point base) {
        Level l;
        l.base = base;
        l.slot.assign(degree_, -1);
        levels_.push_back(std::move(l));
    }

    void rebuild_orbit(std::size_t i) {
        Level& l = levels_[i];
        l.orbit.assign(1, l.base);
        l.slot.assign(degree_, -1);
        l.transversal.assign(1, Permutation::identity(degree_));
        l.slot[l.base] = 0;
        for (std::size_t k = 0; k < l.orbit.size(); ++k) {
            for (const auto& s : l.gens) {
                Point q = s(l.orbit[k]);
                if (l.slot[q] >= 0) continue;
                l.slot[q] = static_cast<int>(l.orbit.size());
                l.orbit.push_back(q);
                l.transversal.push_back(compose(s, l.transversal[k]));
            }
        }
    }

    // Sims' completion: every Schreier generator of level i must sift through
    // the levels below it. A failure adds the residue as a new strong generator
    // and restarts checking from the level where it was added.
    void complete() {
        std::size_t i = levels_.size();
        while (i > 0) {
            std::size_t cur = i - 1;
            bool clean = true;
            const std::size_t norb = levels_[cur].orbit.size();
            for (std::size_t k = 0; k < norb && clean; ++k) {
                for (std::size_t s = 0; s < levels_[cur].gens.size() && clean; ++s) {
                    const Level& l = levels_[cur];
                    const Permutation& u = l.transversal[k];
                    const Permutation& g = l.gens[s];
                    Point q = g(l.orbit[k]);
                    Permutation schreier = compose(inverse(l.transversal[l.slot[q]]), compose(g, u));
                    auto [h, j] = sift(std::move(schreier), cur + 1);
                    if (h.is_identity()) continue;
                    if (j == levels_.size()) add_level(h.first_moved());
                    for (std::size_t t = cur + 1; t <= j; ++t) {
                        levels_[t].gens.push_back(h);
                        rebuild_orbit(t);
                    }
                    i = j + 1;
                    clean = false;
                }
            }
            if (clean) --i;
        }
    }

    std::size_t degree_ = 0;
    std::vector<Level> levels_;
};

inline StabilizerChain build_chain(const std::vector<Permutation>& generators) {
    return StabilizerChain(generators);
}

inline bool contains(const StabilizerChain& chain, const Permutation& g) { return chain.contains(g); }

}  // namespace spreadlab

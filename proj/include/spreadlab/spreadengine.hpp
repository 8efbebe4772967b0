#pragma once

#include "supportnet.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

namespace spreadlab {

struct CoverSearchConfig {
    unsigned long long node_budget = 0;  // 0: unlimited
    double time_budget_seconds = 0;      // 0: unlimited
    unsigned threads = 1;
    bool dominance = true;
    bool conjugacy_first_pick = true;
    bool hardest_first = true;
    unsigned split_depth = 2;  // depth of the task frontier handed to threads
};

struct SearchStats {
    unsigned long long nodes = 0;
    unsigned long long incumbent_updates = 0;
    double seconds = 0;
};

enum class SearchStatus { Exact, BudgetExhausted };

struct SpreadResult {
    SearchStatus status = SearchStatus::Exact;
    std::size_t exact_spread = 0;     // meaningful when status == Exact
    std::size_t cover_lower = 0;      // proven: every cover has at least this many elements
    std::size_t cover_upper = 0;      // size of the best cover found
    std::vector<Index> witness;       // a cover of size cover_upper, ascending
    SearchStats stats;

    bool exact() const { return status == SearchStatus::Exact; }
    std::size_t spread_lower() const { return cover_lower - 1; }
    std::size_t spread_upper() const { return cover_upper - 1; }
};

// Set cover over G^# reduced to element types. Two elements with the same
// row of containing maximals support exactly the same elements, so the
// search works on distinct rows. A requirement is an inclusion-minimal row
// (covering it covers every row above it); a candidate is an
// inclusion-maximal row when dominance is on (it supports a superset).
struct CoverProblem {
    std::size_t group_order = 0;
    std::vector<Bitset> type_rows;
    std::vector<Index> type_element;              // lowest element of each type
    std::vector<std::uint32_t> element_type;      // 0 for the identity
    std::vector<std::uint32_t> req_type, cand_type;
    std::vector<Bitset> cand_cover;               // candidate -> requirements
    std::vector<Bitset> req_cands;                // requirement -> candidates
    std::vector<std::uint32_t> req_family;        // conjugation orbit of requirements
    std::vector<Bitset> family_mask;
    std::vector<std::uint32_t> cand_orbit;        // conjugation orbit of candidates
    std::vector<std::vector<std::uint32_t>> orbit_members;

    std::size_t requirements() const { return req_type.size(); }
    std::size_t candidates() const { return cand_type.size(); }
    Index candidate_element(std::uint32_t c) const { return type_element[cand_type[c]]; }
};

namespace detail {

struct UnionFind {
    std::vector<std::uint32_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0U); }
    std::uint32_t find(std::uint32_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// Orbits of a subset of rows under the generators' action on maximals.
inline std::vector<std::uint32_t> row_orbits(const std::vector<Bitset>& rows, const SupportMatrix& m) {
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> at;
    for (std::uint32_t i = 0; i < rows.size(); ++i) at.emplace(rows[i], i);
    UnionFind uf(rows.size());
    for (const auto& act : m.mask_action) {
        for (std::uint32_t i = 0; i < rows.size(); ++i) {
            Bitset img(rows[i].size());
            rows[i].for_each([&](std::size_t k) { img.set(act[k]); });
            auto it = at.find(img);
            if (it == at.end()) throw Error("row set is not closed under conjugation");
            uf.unite(i, it->second);
        }
    }
    std::vector<std::uint32_t> id(rows.size()), label(rows.size(), ~0U);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < rows.size(); ++i) {
        auto r = uf.find(i);
        if (label[r] == ~0U) label[r] = next++;
        id[i] = label[r];
    }
    return id;
}

}  // namespace detail

inline CoverProblem build_cover_problem(const SupportMatrix& m, bool dominance = true) {
    CoverProblem P;
    P.group_order = m.group_order;
    P.element_type.assign(m.group_order, 0);
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> type_of;
    for (Index y = 1; y < m.group_order; ++y) {
        auto [it, fresh] = type_of.emplace(m.rows[y], static_cast<std::uint32_t>(P.type_rows.size()));
        if (fresh) {
            P.type_rows.push_back(m.rows[y]);
            P.type_element.push_back(y);
        }
        P.element_type[y] = it->second;
    }
    const std::size_t T = P.type_rows.size();
    std::vector<std::size_t> pop(T);
    for (std::size_t t = 0; t < T; ++t) pop[t] = P.type_rows[t].count();

    // Distinct rows, so inclusion between two of them is strict.
    std::vector<char> is_min(T, 1), is_max(T, 1);
    for (std::size_t a = 0; a < T; ++a)
        for (std::size_t b = 0; b < T; ++b)
            if (pop[a] < pop[b] && P.type_rows[a].is_subset_of(P.type_rows[b])) {
                is_min[b] = 0;
                is_max[a] = 0;
            }
    for (std::uint32_t t = 0; t < T; ++t) {
        if (is_min[t]) P.req_type.push_back(t);
        if (is_max[t] || !dominance) P.cand_type.push_back(t);
    }
    // Candidates that support more requirements first; ties by lowest element.
    std::vector<std::size_t> reach(T, 0);
    for (auto c : P.cand_type)
        for (auto r : P.req_type) reach[c] += P.type_rows[c].intersects(P.type_rows[r]);
    std::stable_sort(P.cand_type.begin(), P.cand_type.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return reach[a] > reach[b]; });

    const std::size_t R = P.req_type.size(), C = P.cand_type.size();
    P.cand_cover.assign(C, Bitset(R));
    P.req_cands.assign(R, Bitset(C));
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t r = 0; r < R; ++r)
            if (P.type_rows[P.cand_type[c]].intersects(P.type_rows[P.req_type[r]])) {
                P.cand_cover[c].set(r);
                P.req_cands[r].set(c);
            }

    std::vector<Bitset> req_rows, cand_rows;
    for (auto t : P.req_type) req_rows.push_back(P.type_rows[t]);
    for (auto t : P.cand_type) cand_rows.push_back(P.type_rows[t]);
    P.req_family = detail::row_orbits(req_rows, m);
    std::size_t F = R ? *std::max_element(P.req_family.begin(), P.req_family.end()) + 1 : 0;
    P.family_mask.assign(F, Bitset(R));
    for (std::size_t r = 0; r < R; ++r) P.family_mask[P.req_family[r]].set(r);
    P.cand_orbit = detail::row_orbits(cand_rows, m);
    std::size_t O = C ? *std::max_element(P.cand_orbit.begin(), P.cand_orbit.end()) + 1 : 0;
    P.orbit_members.assign(O, {});
    for (std::uint32_t c = 0; c < C; ++c) P.orbit_members[P.cand_orbit[c]].push_back(c);
    return P;
}

// Minimum number of further candidates needed to cover U using candidates
// outside E. Requirements split into conjugation families; a candidate covers
// at most maxcov of a family's uncovered members, giving ceil(unc / maxcov).
// Families linked by a common candidate form a component; components have
// disjoint candidate sets, so their bounds add.
inline std::size_t cover_lower_bound(const CoverProblem& P, const Bitset& U, const Bitset& E) {
    constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max() / 4;
    const std::size_t F = P.family_mask.size();
    if (U.none()) return 0;
    std::vector<std::size_t> unc(F, 0), maxcov(F, 0);
    for (std::size_t f = 0; f < F; ++f) unc[f] = U.count_and(P.family_mask[f]);
    detail::UnionFind uf(F);
    std::vector<std::size_t> per(F);
    std::vector<std::pair<std::uint32_t, std::size_t>> comp_cov;  // (representative family, total)
    Bitset cov(U.size());
    for (std::size_t c = 0; c < P.candidates(); ++c) {
        if (E.test(c)) continue;
        cov = P.cand_cover[c];
        cov &= U;
        if (cov.none()) continue;
        std::uint32_t first = ~0U;
        std::size_t total = 0;
        for (std::size_t f = 0; f < F; ++f) {
            if (!unc[f]) continue;
            std::size_t k = cov.count_and(P.family_mask[f]);
            if (!k) continue;
            maxcov[f] = std::max(maxcov[f], k);
            total += k;
            if (first == ~0U)
                first = static_cast<std::uint32_t>(f);
            else
                uf.unite(first, static_cast<std::uint32_t>(f));
        }
        comp_cov.emplace_back(first, total);
    }
    std::vector<std::size_t> comp_unc(F, 0), comp_max(F, 0), comp_fam(F, 0);
    for (std::size_t f = 0; f < F; ++f) {
        if (!unc[f]) continue;
        if (!maxcov[f]) return kInfeasible;
        auto r = uf.find(static_cast<std::uint32_t>(f));
        comp_unc[r] += unc[f];
        comp_fam[r] = std::max(comp_fam[r], (unc[f] + maxcov[f] - 1) / maxcov[f]);
    }
    for (auto [f, total] : comp_cov) {
        auto r = uf.find(f);
        comp_max[r] = std::max(comp_max[r], total);
    }
    std::size_t lb = 0;
    for (std::size_t r = 0; r < F; ++r) {
        if (!comp_unc[r]) continue;
        lb += std::max(comp_fam[r], (comp_unc[r] + comp_max[r] - 1) / comp_max[r]);
    }
    return lb;
}

namespace detail {

struct Node {
    std::vector<std::uint32_t> chosen;
    Bitset uncovered;  // requirements
    Bitset excluded;   // candidates
};

class CoverSearch {
public:
    CoverSearch(const CoverProblem& P, const CoverSearchConfig& cfg) : P_(P), cfg_(cfg) {
        start_ = std::chrono::steady_clock::now();
    }

    Node root() const {
        Node n;
        n.uncovered = Bitset(P_.requirements());
        n.uncovered.set_all();
        n.excluded = Bitset(P_.candidates());
        return n;
    }

    // Calls f(child) for each child in canonical order; stops when f returns true.
    template <class F>
    bool for_each_child(const Node& node, F&& f) const {
        if (node.chosen.empty() && cfg_.conjugacy_first_pick) {
            // Some conjugate of any cover contains the first representative
            // of an orbit; covers meeting earlier orbits were already tried.
            Node child;
            child.excluded = node.excluded;
            for (const auto& members : P_.orbit_members) {
                std::uint32_t c = members.front();
                child.chosen = {c};
                child.uncovered = node.uncovered;
                child.uncovered.subtract(P_.cand_cover[c]);
                if (f(child)) return true;
                for (auto x : members) child.excluded.set(x);
            }
            return false;
        }
        std::size_t best_r = P_.requirements(), best_cnt = std::numeric_limits<std::size_t>::max();
        bool dead = false;
        node.uncovered.for_each([&](std::size_t r) {
            if (dead || (!cfg_.hardest_first && best_r != P_.requirements())) return;
            std::size_t cnt = P_.req_cands[r].count_andnot(node.excluded);
            if (cnt == 0) dead = true;
            if (cnt < best_cnt) {
                best_cnt = cnt;
                best_r = r;
            }
        });
        if (dead || best_r == P_.requirements()) return false;
        Node child;
        child.excluded = node.excluded;
        Bitset options = P_.req_cands[best_r];
        options.subtract(node.excluded);
        bool stop = false;
        options.for_each([&](std::size_t c) {
            if (stop) return;
            child.chosen = node.chosen;
            child.chosen.push_back(static_cast<std::uint32_t>(c));
            child.uncovered = node.uncovered;
            child.uncovered.subtract(P_.cand_cover[c]);
            if (f(child)) {
                stop = true;
                return;
            }
            child.excluded.set(c);
        });
        return stop;
    }

    bool prunable(const Node& node, std::size_t k) const {
        if (node.uncovered.none()) return false;
        if (node.chosen.size() >= k) return true;
        return node.chosen.size() + cover_lower_bound(P_, node.uncovered, node.excluded) > k;
    }

    // Depth-first search for a cover of size <= k below `node`.
    // Returns 1 found, 0 exhausted, -1 aborted.
    int dfs(const Node& node, std::size_t k, const std::atomic<std::size_t>* cancel_above, std::size_t task,
            std::vector<std::uint32_t>& out) {
        if (!tick()) return -1;
        if (cancel_above && cancel_above->load(std::memory_order_relaxed) < task) return -1;
        if (node.uncovered.none()) {
            out = node.chosen;
            return 1;
        }
        if (prunable(node, k)) return 0;
        int result = 0;
        for_each_child(node, [&](const Node& child) {
            int r = dfs(child, k, cancel_above, task, out);
            if (r != 0) result = r;
            return r != 0;
        });
        return result;
    }

    bool tick() {
        auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (exhausted_.load(std::memory_order_relaxed)) return false;
        if (cfg_.node_budget && n > cfg_.node_budget) {
            exhausted_ = true;
            return false;
        }
        if (cfg_.time_budget_seconds > 0 && (n & 255) == 0 && elapsed() > cfg_.time_budget_seconds) {
            exhausted_ = true;
            return false;
        }
        return true;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    unsigned long long nodes() const { return nodes_.load(); }
    bool exhausted() const { return exhausted_.load(); }

    // Frontier of the canonical search tree at the configured split depth.
    std::vector<Node> frontier(std::size_t k) {
        std::vector<Node> level{root()};
        for (unsigned d = 0; d < cfg_.split_depth; ++d) {
            std::vector<Node> next;
            for (const auto& n : level) {
                if (n.uncovered.none() || prunable(n, k)) {
                    next.push_back(n);
                    continue;
                }
                for_each_child(n, [&](const Node& c) {
                    next.push_back(c);
                    return false;
                });
            }
            level = std::move(next);
        }
        return level;
    }

    // First cover of size <= k in canonical order, or nullopt. Sets *aborted
    // when a budget ran out before the answer was known.
    std::optional<std::vector<std::uint32_t>> decide(std::size_t k, bool* aborted) {
        *aborted = false;
        std::vector<Node> tasks = frontier(k);
        std::atomic<std::size_t> best{tasks.size()};
        std::atomic<std::size_t> next{0};
        std::vector<std::vector<std::uint32_t>> found(tasks.size());
        std::vector<int> state(tasks.size(), 0);
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                if (best.load() < i) {
                    state[i] = -1;
                    continue;
                }
                std::vector<std::uint32_t> out;
                int r = dfs(tasks[i], k, &best, i, out);
                state[i] = r;
                if (r == 1) {
                    found[i] = std::move(out);
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        unsigned nt = std::max(1U, cfg_.threads);
        if (nt == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        std::size_t b = best.load();
        // Every task before the winner must have been searched to completion.
        for (std::size_t i = 0; i < std::min(b, tasks.size()); ++i)
            if (state[i] != 0) {
                *aborted = true;
                return std::nullopt;
            }
        if (b < tasks.size()) return found[b];
        return std::nullopt;
    }

private:
    const CoverProblem& P_;
    CoverSearchConfig cfg_;
    std::atomic<unsigned long long> nodes_{0};
    std::atomic<bool> exhausted_{false};
    std::chrono::steady_clock::time_point start_;
};

inline std::vector<Index> to_elements(const CoverProblem& P, const std::vector<std::uint32_t>& cands) {
    std::vector<Index> xs;
    for (auto c : cands) xs.push_back(P.candidate_element(c));
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace detail

// Repeatedly adds the element supporting the most still-unsupported elements;
// ties go to the lowest element index.
inline ElementSet greedy_cover(const SupportMatrix& m) {
    ElementSet uncovered = m.nonidentity();
    ElementSet X = m.empty_set();
    // Elements with equal rows have equal supports; evaluate one per row.
    std::unordered_map<Bitset, Index, BitsetHash> first;
    std::vector<Index> reps;
    for (Index y = 1; y < m.group_order; ++y)
        if (first.emplace(m.rows[y], y).second) reps.push_back(y);
    std::vector<ElementSet> supp;
    for (Index y : reps) supp.push_back(support_of(y, m));
    while (uncovered.any()) {
        std::size_t best = 0, best_gain = 0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            std::size_t gain = supp[i].count_and(uncovered);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best_gain == 0) break;
        X.set(reps[best]);
        uncovered.subtract(supp[best]);
    }
    return X;
}

inline SpreadResult exact_spread(const SupportMatrix& m, const CoverSearchConfig& cfg = {}) {
    if (m.group_order < 2) throw Error("exact spread needs a nontrivial group");
    auto t0 = std::chrono::steady_clock::now();
    CoverProblem P = build_cover_problem(m, cfg.dominance);
    detail::CoverSearch search(P, cfg);

    ElementSet greedy = greedy_cover(m);
    SpreadResult res;
    res.cover_upper = greedy.count();
    res.witness.clear();
    greedy.for_each([&](std::size_t x) { res.witness.push_back(static_cast<Index>(x)); });
    res.stats.incumbent_updates = 1;

    detail::Node root = search.root();
    std::size_t k = std::max<std::size_t>(1, cover_lower_bound(P, root.uncovered, root.excluded));
    res.cover_lower = k;
    res.status = SearchStatus::BudgetExhausted;
    for (; k <= res.cover_upper; ++k) {
        bool aborted = false;
        auto sol = search.decide(k, &aborted);
        if (aborted) break;
        if (sol) {
            res.witness = detail::to_elements(P, *sol);
            res.cover_upper = res.witness.size();
            res.cover_lower = res.cover_upper;
            res.exact_spread = res.cover_upper - 1;
            res.status = SearchStatus::Exact;
            ++res.stats.incumbent_updates;
            break;
        }
        res.cover_lower = k + 1;
    }
    res.stats.nodes = search.nodes();
    res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.exact() && !supports_all(element_set(m, res.witness), m))
        throw Error("internal: search returned a non-covering witness");
    return res;
}

struct AtLeastResult {
    SearchStatus status = SearchStatus::Exact;
    bool holds = false;           // every r-subset of G^# has a mate
    std::vector<Index> witness;   // when !holds: r elements with no common mate
    SearchStats stats;
};

inline AtLeastResult spread_at_least(const SupportMatrix& m, std::size_t r, const CoverSearchConfig& cfg = {}) {
    if (r == 0 || r > m.group_order - 1) throw Error("r must lie in 1..|G|-1");
    auto t0 = std::chrono::steady_clock::now();
    CoverProblem P = build_cover_problem(m, cfg.dominance);
    detail::CoverSearch search(P, cfg);
    AtLeastResult res;
    bool aborted = false;
    auto sol = search.decide(r, &aborted);
    res.stats.nodes = search.nodes();
    res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (aborted) {
        res.status = SearchStatus::BudgetExhausted;
        return res;
    }
    if (!sol) {
        res.holds = true;
        return res;
    }
    res.witness = detail::to_elements(P, *sol);
    // Any superset of a supporting set still supports; pad with the lowest unused elements.
    ElementSet in = element_set(m, res.witness);
    for (Index y = 1; res.witness.size() < r; ++y)
        if (!in.test(y)) res.witness.push_back(y);
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

// |X| - 1 when X supports G^#, nothing otherwise.
inline std::optional<BigInt> woldar_bound_elementwise(const ElementSet& X, const SupportMatrix& m) {
    if (X.none() || !supports_all(X, m)) return std::nullopt;
    return BigInt(X.count()) - 1;
}

}  // namespace spreadlab

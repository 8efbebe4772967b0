// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// gating criterion fails. Expected values are the published ones, verbatim.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace spreadlab;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& why) {
        pass = false;
        notes.push_back("FAIL " + why);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

struct Loaded {
    GroupSpec spec;
    StabilizerChain chain;
    GroupIndex idx;
    SupportMatrix m;
};

Loaded load(const std::string& stem) {
    Loaded g;
    g.spec = oracle::spec(stem);
    g.chain = build_chain(g.spec.generators);
    g.idx = enumerate_elements(g.chain);
    g.m = build_support_matrix(g.spec, g.idx);
    return g;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return "{" + out + "}";
}

// ------------------------------------------------------------------ 1

Outcome exact_spreads() {
    Outcome o;
    struct Case {
        const char* stem;
        std::size_t expected;
        double limit;
    };
    for (const Case& c : {Case{"a5", 2, 10}, Case{"a6", 2, 10}, Case{"l2_8", 6, 300}, Case{"l2_11", 7, 300},
                          Case{"m11", 3, 1800}}) {
        auto t0 = Clock::now();
        Loaded g = load(c.stem);
        SpreadResult r = exact_spread(g.m);
        const double s = since(t0);
        std::ostringstream line;
        line << g.spec.name << ": expected " << c.expected << ", ";
        if (!r.exact()) {
            line << "search incomplete";
            o.fail(line.str());
            continue;
        }
        line << "computed " << r.exact_spread << " in " << std::fixed;
        line.precision(2);
        line << s << " s (limit " << c.limit << " s)";
        if (r.exact_spread != c.expected || s > c.limit) o.fail(line.str());
        else o.note("ok   " + line.str());
    }
    // Stretch cases do not gate; the budget is bounded so a run stays finite.
    double budget = 120;
    if (const char* env = std::getenv("SPREADLAB_STRETCH_SECONDS")) budget = std::atof(env);
    for (auto [stem, expected] : std::vector<std::pair<const char*, std::size_t>>{{"l2_13", 12}, {"l2_16", 14}, {"l2_19", 15}}) {
        Loaded g = load(stem);
        CoverSearchConfig cfg;
        cfg.time_budget_seconds = budget;
        SpreadResult r = exact_spread(g.m, cfg);
        std::ostringstream line;
        line << "stretch " << g.spec.name << ": expected " << expected << ", ";
        if (r.exact()) {
            line << "computed " << r.exact_spread << (r.exact_spread == expected ? " (agrees)" : " (DISAGREES)");
        } else {
            line << "budget " << budget << " s: " << r.spread_lower() << " <= s <= " << r.spread_upper();
            if (r.spread_lower() > expected) line << " (proven lower bound exceeds the expected value)";
        }
        o.note(line.str());
    }
    return o;
}

// ------------------------------------------------------------------ 2

Outcome duality_oracle() {
    Outcome o;
    Loaded g = load("a5");
    const std::size_t n = g.idx.order();
    std::vector<std::vector<char>> gen(n, std::vector<char>(n, 0));
    for (Index x = 1; x < n; ++x)
        for (Index y = 1; y < n; ++y) gen[x][y] = two_generates(g.idx, x, y, g.chain);
    auto has_mate = [&](const std::vector<Index>& X) {
        for (Index y = 1; y < n; ++y) {
            bool all = true;
            for (Index x : X) all = all && gen[x][y];
            if (all) return true;
        }
        return false;
    };
    std::size_t pairs = 0;
    bool every_pair = true;
    for (Index a = 1; a < n; ++a)
        for (Index b = a + 1; b < n; ++b) {
            ++pairs;
            if (!has_mate({a, b})) every_pair = false;
        }
    AtLeastResult r3 = spread_at_least(g.m, 3);
    const bool triple_ok = !r3.holds && r3.witness.size() == 3 && !has_mate(r3.witness);
    SpreadResult s = exact_spread(g.m);
    const std::size_t brute = every_pair && triple_ok ? 2 : 0;
    o.note("every one of " + std::to_string(pairs) + " 2-subsets has a mate: " + (every_pair ? "yes" : "no"));
    o.note("mate-free 3-subset " + std::string(triple_ok ? "found" : "missing"));
    if (!every_pair || !triple_ok || !s.exact() || s.exact_spread != brute)
        o.fail("set-cover spread " + std::to_string(s.exact_spread) + " vs definition-level " + std::to_string(brute));
    return o;
}

// ------------------------------------------------------------------ 3

Outcome residual_lists() {
    Outcome o;
    const std::vector<std::pair<const char*, std::vector<std::string>>> expected = {
        {"ru", {"15A", "29A"}},
        {"hn", {"9A", "19A", "19B", "25A", "25B", "35A", "35B"}},
        {"fi23", {"9A", "17A", "23A", "23B", "27A", "35A", "39A", "39B"}},
        {"co1", {"21B", "21C", "23A", "23B", "33A", "35A", "39A", "39B"}},
        {"j4", {"23A", "29A", "31A", "31B", "31C", "35A", "35B", "37A", "37B", "37C", "43A", "43B", "43C"}},
        {"fi24p",
         {"9D", "15B", "17A", "21B", "27B", "27C", "29A", "29B", "33A", "33B", "39A", "39B", "39C", "39D", "45A", "45B"}},
        {"m", {"27B", "29A", "39B", "41A", "45A", "51A", "57A", "59A", "59B", "69A", "69B", "71A", "71B", "87A", "87B",
               "93A", "93B", "95A", "95B", "105A", "119A", "119B"}},
    };
    for (const auto& [stem, list] : expected) {
        auto t0 = Clock::now();
        ClassTable t = oracle::table(std::string("sporadic/") + stem + ".table.json");
        Certificate c = load_certificate(oracle::read(oracle::data(std::string("sporadic/") + stem + ".cert.json")), t);
        TrickReport r = even_order_trick(t, c.target);
        const double s = since(t0);
        std::set<std::string> got, want(list.begin(), list.end());
        for (auto k : r.residual) got.insert(t.classes[k].name);
        std::set<std::string> extra, missing;
        std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::inserter(extra, extra.end()));
        std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::inserter(missing, missing.end()));
        std::string line = t.name + " (target " + c.target + "): ";
        if (got == want && s < 1.0) {
            o.note("ok   " + line + join(got));
        } else {
            if (!extra.empty()) line += "computed also " + join(extra) + " ";
            if (!missing.empty()) line += "expected also " + join(missing) + " ";
            if (s >= 1.0) line += "took " + std::to_string(s) + " s";
            o.fail(line);
        }
    }
    return o;
}

// ------------------------------------------------------------------ 4

Outcome table1() {
    Outcome o;
    auto t0 = Clock::now();
    const std::map<std::string, std::string> expected = {
        {"Ru", "1252799"},        {"O'N", "2857238"},       {"Co2", "1024649"},
        {"HN", "75603374"},       {"Ly", "1296826874"},     {"Th", "976841774"},
        {"Fi23", "31670"},        {"Co1", "46621574"},      {"J4", "47766599363"},
        {"Fi24'", "7819305288794"}, {"M", "5791748068511982636944259374"},
    };
    RunReport r = cmd_verify_table1(oracle::data("sporadic").string());
    std::size_t certified = 0, passthrough = 0;
    std::set<std::string> seen;
    for (const auto& row : r.machine["rows"]) {
        const std::string name = row["name"], status = row["status"], bound = row["bound"];
        auto it = expected.find(name);
        if (it == expected.end()) {
            if (status == "passthrough") ++passthrough;
            else o.fail(name + " should be passthrough, is " + status);
            continue;
        }
        seen.insert(name);
        if (status != "certified") o.fail(name + " is " + status);
        else ++certified;
        if (bound != it->second) o.fail(name + ": expected " + it->second + ", certified " + bound);
    }
    for (const auto& [name, b] : expected)
        if (!seen.count(name)) o.fail(name + " row missing");
    const double s = since(t0);
    o.note(std::to_string(certified) + " certified, " + std::to_string(passthrough) + " passthrough in " +
           std::to_string(s) + " s");
    if (passthrough != 15) o.fail("expected 15 passthrough rows");
    if (s >= 10) o.fail("took longer than 10 s");
    return o;
}

// ------------------------------------------------------------------ 5

Outcome trick_soundness() {
    Outcome o;
    for (const char* stem : {"a5", "m11"}) {
        Loaded g = load(stem);
        ClassPartition cp = conjugacy_classes(g.idx, g.spec.generators);
        ClassTable t = oracle::table(std::string("groups/") + stem + ".table.json");
        std::size_t checked = 0;
        for (std::size_t target = 0; target < t.classes.size(); ++target) {
            if (t.classes[target].element_order != 2) continue;
            const std::size_t tk = cp.find(t.classes[target].name);
            Bitset meets(g.m.masks.size());
            for (Index x = 1; x < g.idx.order(); ++x)
                if (cp.class_of[x] == tk) meets |= g.m.rows[x];
            for (const auto& e : even_order_trick(t, t.classes[target].name).eliminated) {
                const std::size_t k = cp.find(t.classes[e.cls].name);
                for (Index x = 1; x < g.idx.order(); ++x) {
                    if (cp.class_of[x] != k) continue;
                    ++checked;
                    if (!g.m.rows[x].intersects(meets))
                        o.fail(g.spec.name + ": element of " + t.classes[e.cls].name + " shares no maximal with " +
                               t.classes[target].name);
                }
            }
        }
        o.note(g.spec.name + ": " + std::to_string(checked) + " eliminated elements checked");
    }
    return o;
}

// ------------------------------------------------------------------ 6

Outcome properties() {
    Outcome o;
    {
        Loaded g = load("a5");
        std::size_t bad = 0;
        std::vector<ElementSet> supp(60, g.m.empty_set());
        for (Index x = 1; x < 60; ++x) supp[x] = support_of(x, g.m);
        for (Index x = 1; x < 60; ++x)
            for (Index y = 1; y < 60; ++y)
                bad += supp[x].test(y) != supp[y].test(x) || two_generates(g.idx, x, y, g.chain) == supp[x].test(y);
        if (bad) o.fail("A5 symmetry/duality violations: " + std::to_string(bad));
        else o.note("A5: symmetry and mate duality on all 3481 pairs");
    }
    Loaded m11 = load("m11");
    {
        oracle::Sampler s(11);
        std::size_t bad = 0;
        for (int k = 0; k < 100000; ++k) {
            Index x = 1 + s.below(7919), y = 1 + s.below(7919);
            const bool in_supp = m11.m.rows[x].intersects(m11.m.rows[y]);
            bad += two_generates(m11.idx, x, y, m11.chain) == in_supp || in_supp != m11.m.rows[y].intersects(m11.m.rows[x]);
        }
        if (bad) o.fail("M11 sampled duality violations: " + std::to_string(bad));
        else o.note("M11: mate duality on 100000 sampled pairs");
    }
    {
        std::size_t bad = 0;
        for (Index x = 1; x < m11.idx.order(); x += 7)
            for (const auto& act : m11.m.element_action) {
                ElementSet img = m11.m.empty_set();
                support_of(x, m11.m).for_each([&](std::size_t y) { img.set(act[y]); });
                bad += !(support_of(act[x], m11.m) == img);
            }
        if (bad) o.fail("conjugation equivariance violations: " + std::to_string(bad));
        else o.note("M11: conjugation equivariance");
    }
    {
        std::size_t bad = 0, maps = 0;
        for (const auto& e : fs::directory_iterator(oracle::data("sporadic"))) {
            const std::string f = e.path().filename().string();
            if (!f.ends_with(".table.json")) continue;
            ClassTable t = load_class_table(oracle::read(e.path()));
            for (const auto& [p, img] : t.power_maps) {
                ++maps;
                for (std::size_t c = 0; c < t.classes.size(); ++c) {
                    auto ord = t.classes[c].element_order;
                    bad += t.classes[img[c]].element_order != ord / std::gcd<unsigned long long>(p, ord);
                }
            }
        }
        if (bad) o.fail("power-map order law violations: " + std::to_string(bad));
        else o.note("power-map order law on " + std::to_string(maps) + " stored maps");
    }
    {
        bool ok = true;
        for (const char* stem : {"a5", "a6", "l2_8", "l2_11", "m11"}) {
            Loaded g = stem == std::string("m11") ? std::move(m11) : load(stem);
            std::vector<std::string> reports;
            for (unsigned t : {1u, 2u, 8u}) {
                CoverSearchConfig cfg;
                cfg.threads = t;
                SpreadResult r = exact_spread(g.m, cfg);
                for (Index y = 1; y < g.idx.order() && ok; ++y) {
                    bool hit = false;
                    for (Index x : r.witness) hit = hit || !two_generates(g.idx, x, y, g.chain);
                    ok = hit;
                }
                if (!ok) o.fail(g.spec.name + ": witness fails independent re-verification");
                reports.push_back(cmd_exact_spread(oracle::data(std::string("groups/") + stem + ".spec.json").string(), cfg)
                                      .render(Format::Machine));
            }
            if (reports[0] != reports[1] || reports[0] != reports[2]) o.fail(g.spec.name + ": reports differ across 1/2/8 threads");
        }
        o.note("witness re-verification and 1/2/8-thread determinism on A5, A6, L2(8), L2(11), M11");
    }
    return o;
}

// ------------------------------------------------------------------ 7

struct Tamper {
    std::string label;
    std::string stem;
    std::function<void(Json& table, Json& cert)> edit;
};

Outcome fault_injection() {
    Outcome o;
    auto set_permchar = [](Json& cert, const std::string& maximal, const std::string& cls, const std::string& v) {
        for (auto& m : cert["maximals"])
            if (m["name"] == maximal) m["permchar"][cls] = v;
    };
    const std::vector<Tamper> corpus = {
        {"power map: Ru 14A squared to 2A", "ru", [](Json& t, Json&) { t["powerMaps"]["2"]["14A"] = "2A"; }},
        {"class size: Ru 2B + 1", "ru",
         [](Json& t, Json&) {
             for (auto& c : t["classes"])
                 if (c["name"] == "2B") c["size"] = "1252801";
         }},
        {"residual list: Ru drops 29B", "ru",
         [](Json&, Json& c) {
             c["residual"] = {"15A", "29A"};
             c["evidence"].erase("29B");
         }},
        {"bound: Ru + 1", "ru", [](Json&, Json& c) { c["bound"] = "1252800"; }},
        {"bound: M last digit", "m", [](Json&, Json& c) { c["bound"] = "5791748068511982636944259375"; }},
        {"power map: HN 25A to the fifth power in 5A", "hn", [](Json& t, Json&) { t["powerMaps"]["5"]["25A"] = "5A"; }},
        {"class size: M 2A doubled", "m",
         [](Json& t, Json&) {
             for (auto& c : t["classes"])
                 if (c["name"] == "2A") c["size"] = to_decimal(BigInt(c["size"].get<std::string>()) * 2);
         }},
        {"residual list: Co1 adds 13A", "co1", [](Json&, Json& c) { c["residual"].push_back("13A"); }},
        {"involution data: J4 sylow2Central emptied", "j4", [](Json& t, Json&) { t["sylow2Central"] = Json::array(); }},
        {"permchar: Co1 (A5xJ2):2 vanishes on 35A", "co1",
         [&](Json&, Json& c) { set_permchar(c, "(A5xJ2):2", "35A", "0"); }},
    };
    fs::path dir = fs::temp_directory_path() / "spreadlab_tamper";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::size_t detected = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& tc = corpus[i];
        Json t = Json::parse(oracle::read(oracle::data("sporadic/" + tc.stem + ".table.json")));
        Json c = Json::parse(oracle::read(oracle::data("sporadic/" + tc.stem + ".cert.json")));
        tc.edit(t, c);
        const fs::path tp = dir / ("case" + std::to_string(i) + ".table.json");
        const fs::path cp = dir / ("case" + std::to_string(i) + ".cert.json");
        std::ofstream(tp) << canonical_dump(t);
        std::ofstream(cp) << canonical_dump(c);
        RunReport r = cmd_certify(tp.string(), cp.string());
        std::string check;
        if (r.machine.contains("check")) check = r.machine["check"];
        else if (!r.machine.value("failures", Json::array()).empty()) check = r.machine["failures"][0].get<std::string>();
        check = check.substr(0, check.find(':'));
        if (r.exit_code == 1 && !check.empty()) {
            ++detected;
            o.note("ok   " + tc.label + " -> exit 1 [" + check + "]");
        } else {
            o.fail(tc.label + " -> exit " + std::to_string(r.exit_code));
        }
    }
    o.note(std::to_string(detected) + "/" + std::to_string(corpus.size()) + " tampered fixtures detected");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1", "exact spread, element level", exact_spreads},
        {"2", "duality oracle on A5", duality_oracle},
        {"3", "even order trick residual lists", residual_lists},
        {"4", "sporadic bound table", table1},
        {"5", "trick soundness at element level", trick_soundness},
        {"6", "property suites", properties},
        {"7", "fault injection", fault_injection},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        std::printf("%s criterion %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, since(t0));
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}

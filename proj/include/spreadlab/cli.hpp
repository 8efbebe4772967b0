#pragma once

#include "chartrick.hpp"
#include "groupdata.hpp"
#include "spreadengine.hpp"
#include "supportnet.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#ifndef SPREADLAB_DEFAULT_DATA
#define SPREADLAB_DEFAULT_DATA "data"
#endif

namespace spreadlab {

// ---------------------------------------------------------------- exit codes

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInput = 2, kExitResource = 3 };

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& msg) : Error(msg) {}
};

// Input that cannot be read or resolved: missing file, wrong document kind, bad flag.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

enum class Format { Text, Machine };

struct RunReport {
    int exit_code = kExitOk;
    std::string text;  // human-readable
    Json machine;      // deterministic; no timings or node counts

    std::string render(Format f) const { return f == Format::Text ? text : canonical_dump(machine); }
};

// ---------------------------------------------------------------- Brenner-Wiegold

enum class BwBranch { OneModFour, ThreeModFour, Even };

struct BrennerWiegoldCase {
    unsigned long long q = 0;
    BwBranch branch = BwBranch::Even;
    unsigned long long expected = 0;
};

inline const char* branch_name(BwBranch b) {
    switch (b) {
        case BwBranch::OneModFour: return "q=1 mod 4";
        case BwBranch::ThreeModFour: return "q=3 mod 4";
        case BwBranch::Even: return "q even";
    }
    return "?";
}

inline bool is_prime_power(unsigned long long q) {
    if (q < 2) return false;
    unsigned long long p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) p = q;
    while (q % p == 0) q /= p;
    return q == 1;
}

// s(L2(q)) by the piecewise formula; valid for odd q >= 11 and even q >= 4.
inline BrennerWiegoldCase bw_case(unsigned long long q) {
    if (!is_prime_power(q)) throw OutOfRange(std::to_string(q) + " is not a prime power");
    BrennerWiegoldCase c{q, BwBranch::Even, 0};
    if (q % 2 == 0) {
        if (q < 4) throw OutOfRange("even q must be at least 4");
        c.expected = q - 2;
    } else {
        if (q < 11) throw OutOfRange("odd q must be at least 11");
        c.branch = q % 4 == 1 ? BwBranch::OneModFour : BwBranch::ThreeModFour;
        c.expected = q % 4 == 1 ? q - 1 : q - 4;
    }
    return c;
}

inline unsigned long long bw_expected(unsigned long long q) { return bw_case(q).expected; }

// ---------------------------------------------------------------- files

namespace cli_detail {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline fs::path data_dir() {
    if (const char* env = std::getenv("SPREADLAB_DATA"); env && *env) return env;
    return SPREADLAB_DEFAULT_DATA;
}

// An existing path is used as given; otherwise a short name such as "m11" or
// "ru" is looked up in the fixture directory.
inline fs::path resolve(const std::string& arg, const std::vector<std::string>& suffixes) {
    if (fs::is_regular_file(arg)) return arg;
    const fs::path root = data_dir();
    for (const char* sub : {"groups", "sporadic", ""})
        for (const auto& s : suffixes) {
            fs::path p = root / sub / (arg + s);
            if (fs::is_regular_file(p)) return p;
        }
    throw InputError("no such file or fixture: " + arg);
}

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }
inline std::string lpad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

inline Json names_json(const ClassTable& t, const std::vector<std::size_t>& cs) {
    Json a = Json::array();
    for (auto c : cs) a.push_back(t.classes[c].name);
    return a;
}

inline RunReport failure(const std::string& command, int code, const std::string& check, const std::string& msg) {
    RunReport r;
    r.exit_code = code;
    r.text = "FAILED [" + check + "] " + msg + "\n";
    r.machine = {{"command", command}, {"status", "error"}, {"check", check}, {"message", msg}, {"exit", code}};
    return r;
}

struct LoadedGroup {
    GroupSpec spec;
    StabilizerChain chain;
    GroupIndex index;
};

inline LoadedGroup load_group(const std::string& arg, std::size_t cap) {
    LoadedGroup g;
    g.spec = load_group_spec(read_file(resolve(arg, {".spec.json"})));
    g.chain = StabilizerChain(g.spec.generators);
    g.index = enumerate_elements(g.chain, cap);
    return g;
}

inline Json witness_json(const GroupIndex& index, const std::vector<Index>& xs) {
    Json a = Json::array();
    for (Index x : xs) a.push_back(index.element(x).to_string());
    return a;
}

}  // namespace cli_detail

// Runs a command body and maps library errors onto the exit-code contract:
// unreadable or malformed input is 2, a failed named check is 1, a resource
// limit is 3.
template <class F>
RunReport run_command(const std::string& command, F&& body) {
    using cli_detail::failure;
    try {
        return body();
    } catch (const ParseError& e) {
        return failure(command, kExitInput, "parse", e.what());
    } catch (const InputError& e) {
        return failure(command, kExitInput, "input", e.what());
    } catch (const OutOfRange& e) {
        return failure(command, kExitInput, "out-of-range", e.what());
    } catch (const UnknownClass& e) {
        return failure(command, kExitInput, "unknown-class", e.what());
    } catch (const ValidationError& e) {
        return failure(command, kExitFailed, e.check(), e.what());
    } catch (const ResidualMismatch& e) {
        return failure(command, kExitFailed, "residual", e.what());
    } catch (const TargetNotInvolution& e) {
        return failure(command, kExitFailed, "target", e.what());
    } catch (const MissingPrimeMap& e) {
        return failure(command, kExitFailed, "power-map-missing", e.what());
    } catch (const OrderExceedsCap& e) {
        return failure(command, kExitResource, "order-cap", e.what());
    } catch (const Error& e) {
        return failure(command, kExitFailed, "error", e.what());
    }
}

// ---------------------------------------------------------------- spread exact

inline RunReport cmd_exact_spread(const std::string& spec_arg, const CoverSearchConfig& cfg,
                                  std::size_t cap = kDefaultOrderCap) {
    return run_command("spread exact", [&] {
        auto g = cli_detail::load_group(spec_arg, cap);
        if (!g.spec.simple)
            throw InputError(g.spec.name + " is not flagged simple; mate duality needs a nonabelian simple group");
        SupportMatrix m = build_support_matrix(g.spec, g.index);
        SpreadResult res = exact_spread(m, cfg);
        const bool supports = supports_all(element_set(m, res.witness), m);

        RunReport r;
        r.exit_code = res.exact() ? kExitOk : kExitResource;
        r.machine = {{"command", "spread exact"},
                     {"group", g.spec.name},
                     {"order", to_decimal(g.spec.order)},
                     {"maximal_subgroups", m.masks.size()},
                     {"status", res.exact() ? "exact" : "budget-exhausted"},
                     {"cover_lower", std::to_string(res.cover_lower)},
                     {"cover_upper", std::to_string(res.cover_upper)},
                     {"witness", cli_detail::witness_json(g.index, res.witness)},
                     {"witness_supports", supports}};
        std::ostringstream os;
        os << "group " << g.spec.name << ", order " << to_decimal(g.spec.order) << ", " << m.masks.size()
           << " maximal subgroups\n";
        if (res.exact()) {
            r.machine["spread"] = std::to_string(res.exact_spread);
            os << "s(" << g.spec.name << ") = " << res.exact_spread << "\n";
        } else {
            r.machine["spread_lower"] = std::to_string(res.spread_lower());
            r.machine["spread_upper"] = std::to_string(res.spread_upper());
            os << "budget exhausted: " << res.spread_lower() << " <= s(" << g.spec.name << ") <= " << res.spread_upper()
               << "\n";
        }
        os << "witness (" << res.witness.size() << " elements, supports G^#: " << (supports ? "yes" : "no") << "):\n";
        for (Index x : res.witness) os << "  " << g.index.element(x).to_string() << "\n";
        os << "search: " << res.stats.nodes << " nodes, " << std::fixed << std::setprecision(3) << res.stats.seconds
           << " s\n";
        r.text = os.str();
        return r;
    });
}

// ---------------------------------------------------------------- spread atleast

// Exit 0 when every r-subset of G^# has a common mate, 1 with a mate-free
// r-subset otherwise.
inline RunReport cmd_spread_atleast(const std::string& spec_arg, std::size_t r_value, const CoverSearchConfig& cfg,
                                    std::size_t cap = kDefaultOrderCap) {
    return run_command("spread atleast", [&] {
        auto g = cli_detail::load_group(spec_arg, cap);
        if (!g.spec.simple)
            throw InputError(g.spec.name + " is not flagged simple; mate duality needs a nonabelian simple group");
        if (r_value == 0 || r_value >= g.index.order()) throw InputError("--r must lie in 1..|G|-1");
        SupportMatrix m = build_support_matrix(g.spec, g.index);
        AtLeastResult res = spread_at_least(m, r_value, cfg);

        RunReport r;
        r.machine = {{"command", "spread atleast"}, {"group", g.spec.name}, {"r", std::to_string(r_value)}};
        std::ostringstream os;
        if (res.status == SearchStatus::BudgetExhausted) {
            r.exit_code = kExitResource;
            r.machine["status"] = "budget-exhausted";
            os << "budget exhausted before deciding spread " << r_value << "\n";
        } else if (res.holds) {
            r.machine["status"] = "holds";
            os << g.spec.name << " has spread " << r_value << "\n";
        } else {
            r.exit_code = kExitFailed;
            const bool supports = supports_all(element_set(m, res.witness), m);
            r.machine["status"] = "fails";
            r.machine["witness"] = cli_detail::witness_json(g.index, res.witness);
            r.machine["witness_supports"] = supports;
            os << g.spec.name << " does not have spread " << r_value << "; these elements have no common mate:\n";
            for (Index x : res.witness) os << "  " << g.index.element(x).to_string() << "\n";
        }
        r.text = os.str();
        return r;
    });
}

// ---------------------------------------------------------------- bound class

// Woldar bound from a whole class. On a class table this is size - 1; on a
// group spec the class is checked element-wise to support G^#.
inline RunReport cmd_bound_class(const std::string& arg, const std::string& cls, std::size_t cap = kDefaultOrderCap) {
    return run_command("bound class", [&] {
        const auto path = cli_detail::resolve(arg, {".spec.json", ".table.json"});
        const std::string bytes = cli_detail::read_file(path);
        const Json doc = detail::parse_document(bytes);
        RunReport r;
        if (doc.is_object() && doc.contains("classes")) {
            ClassTable t = load_class_table(bytes);
            BigInt b = woldar_bound(t, cls);
            r.machine = {{"command", "bound class"}, {"group", t.name}, {"class", cls}, {"status", "bound"},
                         {"bound", to_decimal(b)}, {"level", "class-table"}};
            r.text = "s(" + t.name + ") <= |" + cls + "| - 1 = " + to_decimal(b) +
                     " (assumes " + cls + " supports G^#; certify to check)\n";
            return r;
        }
        GroupSpec spec = load_group_spec(bytes);
        StabilizerChain chain(spec.generators);
        GroupIndex index = enumerate_elements(chain, cap);
        ClassPartition cp = conjugacy_classes(index, spec.generators);
        const std::size_t k = cp.find(cls);
        SupportMatrix m = build_support_matrix(spec, index);
        ElementSet X = m.empty_set();
        for (Index x = 0; x < index.order(); ++x)
            if (cp.class_of[x] == k) X.set(x);
        if (X.test(0)) throw InputError("the identity class cannot form a supporting set");
        auto b = woldar_bound_elementwise(X, m);
        r.machine = {{"command", "bound class"}, {"group", spec.name}, {"class", cls}, {"level", "element"}};
        if (b) {
            r.machine["status"] = "bound";
            r.machine["bound"] = to_decimal(*b);
            r.text = "class " + cls + " supports G^#: s(" + spec.name + ") <= " + to_decimal(*b) + "\n";
        } else {
            r.exit_code = kExitFailed;
            r.machine["status"] = "not-supporting";
            r.text = "FAILED [not-supporting] class " + cls + " does not support G^#\n";
        }
        return r;
    });
}

// ---------------------------------------------------------------- trick

inline Json trick_json(const ClassTable& t, const TrickReport& rep) {
    Json el = Json::array();
    for (const auto& e : rep.eliminated) el.push_back({{"class", t.classes[e.cls].name}, {"witness", t.classes[e.witness].name}});
    return {{"target", t.classes[rep.target].name},
            {"target_sylow2_central", rep.target_sylow_central},
            {"eliminated", el},
            {"residual", cli_detail::names_json(t, rep.residual)}};
}

inline RunReport cmd_trick(const std::string& table_arg, const std::string& target) {
    return run_command("trick", [&] {
        ClassTable t = load_class_table(cli_detail::read_file(cli_detail::resolve(table_arg, {".table.json"})));
        TrickReport rep = even_order_trick(t, target);
        RunReport r;
        r.machine = trick_json(t, rep);
        r.machine["command"] = "trick";
        r.machine["group"] = t.name;
        r.machine["status"] = "ok";
        std::ostringstream os;
        os << "even order trick on " << t.name << ", target " << target
           << (rep.target_sylow_central ? " (meets the center of a Sylow 2-subgroup)" : "") << "\n";
        os << "eliminated " << rep.eliminated.size() << " classes:\n";
        for (const auto& e : rep.eliminated)
            os << "  " << cli_detail::pad(t.classes[e.cls].name, 6) << " via " << t.classes[e.witness].name << "\n";
        os << "residual: " << (rep.residual.empty() ? "(none)" : class_list(t, rep.residual)) << "\n";
        r.text = os.str();
        return r;
    });
}

// ---------------------------------------------------------------- certify

inline Json certificate_json(const CertificateReport& rep) {
    Json classes = Json::array();
    for (const auto& v : rep.classes) {
        Json items = Json::array();
        for (const auto& c : v.checks) {
            Json it = {{"item", c.item.describe()}, {"status", status_name(c.status)}};
            if (!c.detail.empty()) it["detail"] = c.detail;
            items.push_back(std::move(it));
        }
        classes.push_back({{"class", v.cls}, {"covered", v.covered}, {"evidence", items}});
    }
    return {{"group", rep.group},
            {"target", rep.target},
            {"status", rep.certified ? "certified" : "failed"},
            {"bound", to_decimal(rep.bound)},
            {"residual", classes},
            {"failures", rep.failures}};
}

struct LoadedCertificate {
    ClassTable table;
    Certificate cert;
};

inline LoadedCertificate load_certificate_pair(const std::filesystem::path& table_path,
                                               const std::filesystem::path& cert_path) {
    LoadedCertificate lc;
    lc.table = load_class_table(cli_detail::read_file(table_path));
    lc.cert = load_certificate(cli_detail::read_file(cert_path), lc.table);
    return lc;
}

inline RunReport cmd_certify(const std::string& table_arg, const std::string& cert_arg) {
    return run_command("certify", [&] {
        auto lc = load_certificate_pair(cli_detail::resolve(table_arg, {".table.json"}),
                                        cli_detail::resolve(cert_arg, {".cert.json"}));
        CertificateReport rep = certify(lc.table, lc.cert);
        RunReport r;
        r.exit_code = rep.certified ? kExitOk : kExitFailed;
        r.machine = certificate_json(rep);
        r.machine["command"] = "certify";
        std::ostringstream os;
        os << rep.group << ": target " << rep.target << ", bound " << to_decimal(rep.bound) << "\n";
        for (const auto& v : rep.classes) {
            os << "  " << cli_detail::pad(v.cls, 6) << (v.covered ? "covered" : "NOT COVERED") << "\n";
            for (const auto& c : v.checks) {
                os << "      " << cli_detail::pad(status_name(c.status), 17) << c.item.describe();
                if (!c.detail.empty()) os << ": " << c.detail;
                os << "\n";
            }
        }
        for (const auto& f : rep.failures) os << "FAILED [" << f.substr(0, f.find(':')) << "] " << f << "\n";
        os << (rep.certified ? "certified" : "not certified") << "\n";
        r.text = os.str();
        return r;
    });
}

// ---------------------------------------------------------------- verify-table1

struct Table1Row {
    std::string name;
    BigInt order;
    BigInt bound;
    std::string status;  // certified | passthrough | failed
    std::string source;  // passthrough provenance, or the failing check
};

// Pairs every <stem>.table.json with <stem>.cert.json, certifies each, and
// adds passthrough rows from table1_passthrough.json. Rows sort by order.
inline std::vector<Table1Row> verify_table1_rows(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<fs::path> tables;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string f = e.path().filename().string();
        if (f.size() > 11 && f.ends_with(".table.json")) tables.push_back(e.path());
    }
    std::sort(tables.begin(), tables.end());
    std::vector<Table1Row> rows;
    for (const auto& tp : tables) {
        const std::string f = tp.filename().string();
        const fs::path cp = dir / (f.substr(0, f.size() - 11) + ".cert.json");
        if (!fs::is_regular_file(cp)) continue;
        Table1Row row;
        row.name = f;
        try {
            auto lc = load_certificate_pair(tp, cp);
            row.name = lc.table.name;
            row.order = lc.table.order;
            CertificateReport rep = certify(lc.table, lc.cert);
            row.bound = rep.bound;
            row.status = rep.certified ? "certified" : "failed";
            if (!rep.certified) row.source = rep.failures.front();
        } catch (const ValidationError& e) {
            row.status = "failed";
            row.source = e.check() + ": " + e.what();
        } catch (const ResidualMismatch& e) {
            row.status = "failed";
            row.source = std::string("residual: ") + e.what();
        } catch (const Error& e) {
            row.status = "failed";
            row.source = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    const fs::path pt = dir / "table1_passthrough.json";
    if (fs::is_regular_file(pt))
        for (auto& p : load_passthrough(cli_detail::read_file(pt)))
            rows.push_back({p.name, p.order, p.bound, "passthrough", p.source});
    std::stable_sort(rows.begin(), rows.end(), [](const Table1Row& a, const Table1Row& b) { return a.order < b.order; });
    return rows;
}

inline RunReport cmd_verify_table1(const std::string& dir_arg) {
    return run_command("verify-table1", [&] {
        const std::filesystem::path dir = dir_arg.empty() ? cli_detail::data_dir() / "sporadic" : std::filesystem::path(dir_arg);
        auto rows = verify_table1_rows(dir);
        RunReport r;
        Json jr = Json::array();
        std::size_t certified = 0, passthrough = 0, failed = 0;
        std::size_t wn = 5, wb = 5;
        for (const auto& row : rows) {
            wn = std::max(wn, row.name.size());
            wb = std::max(wb, to_decimal(row.bound).size());
        }
        std::ostringstream os;
        os << cli_detail::pad("Group", wn) << "  " << cli_detail::lpad("Bound", wb) << "  Status\n";
        os << std::string(wn + wb + 15, '-') << "\n";
        for (const auto& row : rows) {
            Json j = {{"name", row.name}, {"order", to_decimal(row.order)}, {"bound", to_decimal(row.bound)},
                      {"status", row.status}};
            if (row.status == "passthrough") j["source"] = row.source;
            if (row.status == "failed") j["check"] = row.source;
            jr.push_back(std::move(j));
            os << cli_detail::pad(row.name, wn) << "  " << cli_detail::lpad(to_decimal(row.bound), wb) << "  "
               << row.status;
            if (!row.source.empty()) os << " (" << row.source << ")";
            os << "\n";
            if (row.status == "certified") ++certified;
            else if (row.status == "passthrough") ++passthrough;
            else ++failed;
        }
        os << certified << " certified, " << passthrough << " passthrough, " << failed << " failed\n";
        r.exit_code = failed ? kExitFailed : kExitOk;
        r.machine = {{"command", "verify-table1"},
                     {"rows", jr},
                     {"certified", certified},
                     {"passthrough", passthrough},
                     {"failed", failed},
                     {"status", failed ? "failed" : "ok"}};
        r.text = os.str();
        return r;
    });
}

// ---------------------------------------------------------------- bw

// Prints the formula value; with check set, also computes s(L2(q)) from the
// l2_<q> fixture and compares.
inline RunReport cmd_bw(unsigned long long q, bool check, const CoverSearchConfig& cfg) {
    return run_command("bw", [&] {
        BrennerWiegoldCase c = bw_case(q);
        RunReport r;
        r.machine = {{"command", "bw"}, {"q", std::to_string(q)}, {"branch", branch_name(c.branch)},
                     {"expected", std::to_string(c.expected)}, {"status", "ok"}};
        r.text = "q = " + std::to_string(q) + " (" + branch_name(c.branch) + "): s(L2(q)) = " +
                 std::to_string(c.expected) + "\n";
        if (!check) return r;
        RunReport sub = cmd_exact_spread("l2_" + std::to_string(q), cfg);
        if (sub.exit_code != kExitOk) {
            sub.machine["command"] = "bw";
            return sub;
        }
        const std::string got = sub.machine["spread"].get<std::string>();
        r.machine["computed"] = got;
        const bool agree = got == std::to_string(c.expected);
        r.machine["status"] = agree ? "agrees" : "disagrees";
        r.exit_code = agree ? kExitOk : kExitFailed;
        r.text += agree ? "computed s(L2(q)) = " + got + ", agrees\n"
                        : "FAILED [bw-formula] computed s(L2(q)) = " + got + ", formula gives " +
                              std::to_string(c.expected) + "\n";
        return r;
    });
}

// ---------------------------------------------------------------- table

// Class table derived from a permutation group spec, in fixture format.
inline RunReport cmd_table(const std::string& spec_arg, std::size_t cap = kDefaultOrderCap) {
    return run_command("table", [&] {
        auto g = cli_detail::load_group(spec_arg, cap);
        ClassPartition cp = conjugacy_classes(g.index, g.spec.generators);
        ClassTable t = derive_class_table(g.spec.name, g.spec.simple, g.index, cp);
        RunReport r;
        r.machine = to_json(t);
        r.text = serialize(t);
        return r;
    });
}

}  // namespace spreadlab

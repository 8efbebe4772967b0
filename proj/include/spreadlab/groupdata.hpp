#pragma once

#include "bigint.hpp"
#include "classes.hpp"
#include "errors.hpp"
#include "permutation.hpp"
#include "stabchain.hpp"

#include <json.hpp>

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spreadlab {

using Json = nlohmann::json;

struct MaximalClassSpec {
    std::string name;
    std::vector<Permutation> generators;
    BigInt order;
    std::size_t count = 0;
};

struct GroupSpec {
    std::string name;
    std::size_t degree = 0;
    BigInt order;
    bool simple = false;
    std::vector<Permutation> generators;
    std::vector<MaximalClassSpec> maximals;
};

struct ClassEntry {
    std::string name;
    unsigned long long element_order = 1;
    BigInt size;
};

struct ClassTable {
    std::string name;
    BigInt order;
    bool simple = false;
    std::vector<ClassEntry> classes;
    std::map<unsigned, std::vector<std::size_t>> power_maps;  // prime -> image class per class
    std::vector<std::size_t> sylow2_central;

    std::size_t find(const std::string& cls) const {
        auto it = by_name_.find(cls);
        if (it == by_name_.end()) throw UnknownClass(cls);
        return it->second;
    }
    bool has(const std::string& cls) const { return by_name_.count(cls) != 0; }
    const std::string& name_of(std::size_t c) const { return classes[c].name; }
    std::size_t identity() const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].element_order == 1) return i;
        throw Error("class table has no identity class");
    }
    void reindex() {
        by_name_.clear();
        for (std::size_t i = 0; i < classes.size(); ++i) by_name_.emplace(classes[i].name, i);
    }

private:
    std::unordered_map<std::string, std::size_t> by_name_;
};

enum class EvidenceKind { CyclicWitness, CentralizerCover, Permchar, OddIndexMaximal, External, EvenMaximals };

inline const char* kind_name(EvidenceKind k) {
    switch (k) {
        case EvidenceKind::CyclicWitness: return "cyclic-witness";
        case EvidenceKind::CentralizerCover: return "centralizer-cover";
        case EvidenceKind::Permchar: return "permchar";
        case EvidenceKind::OddIndexMaximal: return "odd-index-maximal";
        case EvidenceKind::External: return "external";
        case EvidenceKind::EvenMaximals: return "even-maximals";
    }
    return "?";
}

struct EvidenceItem {
    EvidenceKind kind = EvidenceKind::External;
    std::string witness;      // cyclic-witness, centralizer-cover
    std::string center;       // centralizer-cover
    std::string maximal;      // permchar, odd-index-maximal
    std::string description;  // external

    std::string describe() const {
        switch (kind) {
            case EvidenceKind::CyclicWitness: return "cyclic-witness(" + witness + ")";
            case EvidenceKind::CentralizerCover: return "centralizer-cover(" + center + ", " + witness + ")";
            case EvidenceKind::Permchar: return "permchar(" + maximal + ")";
            case EvidenceKind::OddIndexMaximal: return "odd-index-maximal(" + maximal + ")";
            case EvidenceKind::External: return "external(" + description + ")";
            case EvidenceKind::EvenMaximals: return "even-maximals";
        }
        return "?";
    }
};

struct MaximalInfo {
    std::string name;
    BigInt order;
    std::optional<std::map<std::string, BigInt>> permchar;
};

struct Certificate {
    std::string name;
    std::string target;
    BigInt bound;
    std::vector<std::string> residual;
    std::map<std::string, std::vector<EvidenceItem>> evidence;
    std::vector<MaximalInfo> maximals;

    const MaximalInfo* find_maximal(const std::string& m) const {
        for (const auto& x : maximals)
            if (x.name == m) return &x;
        return nullptr;
    }
};

struct PassthroughRow {
    std::string name;
    BigInt order;
    BigInt bound;
    std::string source;
};

namespace detail {

inline std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}
inline std::string join_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

inline Json parse_document(std::string_view bytes) {
    try {
        return Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(join_path(path, key), "missing field");
    return *it;
}

inline std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected string");
    return j.get<std::string>();
}

inline bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw ParseError(path, "expected boolean");
    return j.get<bool>();
}

inline unsigned long long get_uint(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError(path, "expected nonnegative integer");
    return j.get<unsigned long long>();
}

// Unbounded integers are decimal strings.
inline BigInt get_big(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected decimal string");
    auto v = parse_decimal(j.get_ref<const std::string&>());
    if (!v) throw ParseError(path, "malformed decimal string");
    return *v;
}

// Permutation-character values may also be native integers.
inline BigInt get_big_or_int(const Json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        if (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)
            throw ParseError(path, "expected nonnegative value");
        return BigInt(j.get<unsigned long long>());
    }
    return get_big(j, path);
}

inline const Json& get_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected array");
    return j;
}

inline Permutation get_permutation(const Json& j, std::size_t degree, const std::string& path) {
    get_array(j, path);
    std::vector<std::vector<long long>> cycles;
    for (std::size_t c = 0; c < j.size(); ++c) {
        const std::string cp = join_path(path, c);
        get_array(j[c], cp);
        std::vector<long long> cyc;
        for (std::size_t k = 0; k < j[c].size(); ++k) {
            const Json& v = j[c][k];
            if (!v.is_number_integer()) throw ParseError(join_path(cp, k), "expected integer point");
            cyc.push_back(v.get<long long>());
        }
        cycles.push_back(std::move(cyc));
    }
    try {
        return Permutation::from_cycles(degree, cycles);
    } catch (const Error& e) {
        throw ParseError(path, e.what());
    }
}

inline std::vector<Permutation> get_generators(const Json& j, std::size_t degree, const std::string& path) {
    get_array(j, path);
    if (j.empty()) throw ParseError(path, "expected at least one generator");
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(get_permutation(j[i], degree, join_path(path, i)));
    return gens;
}

inline Json permutation_json(const Permutation& p) {
    Json a = Json::array();
    for (const auto& c : p.cycles()) a.push_back(c);
    return a;
}

inline bool is_prime(unsigned long long p) {
    if (p < 2) return false;
    for (unsigned long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::vector<unsigned long long> prime_factors(unsigned long long n) {
    std::vector<unsigned long long> out;
    for (unsigned long long d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- group specs

inline GroupSpec parse_group_spec(std::string_view bytes) {
    using namespace detail;
    Json j = parse_document(bytes);
    GroupSpec g;
    g.name = get_string(field(j, "name", ""), "name");
    g.degree = get_uint(field(j, "degree", ""), "degree");
    if (g.degree == 0) throw ParseError("degree", "degree must be positive");
    g.order = get_big(field(j, "order", ""), "order");
    if (j.contains("simple")) g.simple = get_bool(j["simple"], "simple");
    g.generators = get_generators(field(j, "generators", ""), g.degree, "generators");
    const Json& ms = get_array(field(j, "maximals", ""), "maximals");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string mp = join_path("maximals", i);
        MaximalClassSpec m;
        m.name = get_string(field(ms[i], "name", mp), join_path(mp, "name"));
        m.order = get_big(field(ms[i], "order", mp), join_path(mp, "order"));
        m.count = get_uint(field(ms[i], "count", mp), join_path(mp, "count"));
        m.generators = get_generators(field(ms[i], "generators", mp), g.degree, join_path(mp, "generators"));
        g.maximals.push_back(std::move(m));
    }
    return g;
}

// Recomputes the group and subgroup orders and compares them with the declarations.
inline void validate_group_spec(const GroupSpec& g) {
    StabilizerChain chain(g.generators);
    if (chain.order() != g.order)
        throw ValidationError("declared-order", "order",
                              "declared " + to_decimal(g.order) + ", generators give " + to_decimal(chain.order()));
    std::set<std::string> names;
    for (std::size_t i = 0; i < g.maximals.size(); ++i) {
        const auto& m = g.maximals[i];
        const std::string mp = detail::join_path("maximals", i);
        if (!names.insert(m.name).second) throw ValidationError("duplicate-name", mp + ".name", "repeated " + m.name);
        for (std::size_t k = 0; k < m.generators.size(); ++k)
            if (!chain.contains(m.generators[k]))
                throw ValidationError("maximal-membership", detail::join_path(mp + ".generators", k),
                                      "generator lies outside the group");
        BigInt mo = StabilizerChain(m.generators).order();
        if (mo != m.order)
            throw ValidationError("maximal-order", mp + ".order",
                                  "declared " + to_decimal(m.order) + ", generators give " + to_decimal(mo));
        if (m.order == g.order) throw ValidationError("maximal-order", mp + ".order", "subgroup is not proper");
        if (m.count == 0 || g.order % (m.order * m.count) != 0)
            throw ValidationError("conjugate-count", mp + ".count",
                                  "count times subgroup order must divide the group order");
    }
}

inline GroupSpec load_group_spec(std::string_view bytes) {
    GroupSpec g = parse_group_spec(bytes);
    validate_group_spec(g);
    return g;
}

inline Json to_json(const GroupSpec& g) {
    Json j;
    j["name"] = g.name;
    j["degree"] = g.degree;
    j["order"] = to_decimal(g.order);
    j["simple"] = g.simple;
    j["generators"] = Json::array();
    for (const auto& p : g.generators) j["generators"].push_back(detail::permutation_json(p));
    j["maximals"] = Json::array();
    for (const auto& m : g.maximals) {
        Json mj;
        mj["name"] = m.name;
        mj["order"] = to_decimal(m.order);
        mj["count"] = m.count;
        mj["generators"] = Json::array();
        for (const auto& p : m.generators) mj["generators"].push_back(detail::permutation_json(p));
        j["maximals"].push_back(std::move(mj));
    }
    return j;
}

inline std::string serialize(const GroupSpec& g) { return canonical_dump(to_json(g)); }

// ---------------------------------------------------------------- class tables

inline ClassTable parse_class_table(std::string_view bytes) {
    using namespace detail;
    Json j = parse_document(bytes);
    ClassTable t;
    t.name = get_string(field(j, "name", ""), "name");
    t.order = get_big(field(j, "order", ""), "order");
    t.simple = get_bool(field(j, "simple", ""), "simple");
    const Json& cs = get_array(field(j, "classes", ""), "classes");
    if (cs.empty()) throw ParseError("classes", "expected at least one class");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string cp = join_path("classes", i);
        ClassEntry c;
        c.name = get_string(field(cs[i], "name", cp), join_path(cp, "name"));
        c.element_order = get_uint(field(cs[i], "elementOrder", cp), join_path(cp, "elementOrder"));
        if (c.element_order == 0) throw ParseError(join_path(cp, "elementOrder"), "element order must be positive");
        c.size = get_big(field(cs[i], "size", cp), join_path(cp, "size"));
        t.classes.push_back(std::move(c));
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < t.classes.size(); ++i)
        if (!seen.insert(t.classes[i].name).second)
            throw ValidationError("duplicate-name", join_path("classes", i) + ".name",
                                  "repeated class " + t.classes[i].name);
    t.reindex();
    const Json& pm = field(j, "powerMaps", "");
    if (!pm.is_object()) throw ParseError("powerMaps", "expected object");
    for (auto it = pm.begin(); it != pm.end(); ++it) {
        const std::string mp = join_path("powerMaps", it.key());
        unsigned long long p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(mp, "power map key must be a prime");
        }
        if (!is_prime(p)) throw ParseError(mp, "power map key must be a prime");
        if (!it.value().is_object()) throw ParseError(mp, "expected object");
        std::vector<std::size_t> img(t.classes.size(), t.classes.size());
        for (auto e = it.value().begin(); e != it.value().end(); ++e) {
            const std::string ep = join_path(mp, e.key());
            if (!t.has(e.key())) throw ValidationError("unknown-class", ep, "no class named " + e.key());
            std::string target = get_string(e.value(), ep);
            if (!t.has(target)) throw ValidationError("unknown-class", ep, "no class named " + target);
            img[t.find(e.key())] = t.find(target);
        }
        for (std::size_t c = 0; c < img.size(); ++c)
            if (img[c] == t.classes.size())
                throw ValidationError("power-map-total", join_path(mp, t.classes[c].name), "class missing from map");
        t.power_maps.emplace(static_cast<unsigned>(p), std::move(img));
    }
    const Json& s2 = get_array(field(j, "sylow2Central", ""), "sylow2Central");
    for (std::size_t i = 0; i < s2.size(); ++i) {
        const std::string sp = join_path("sylow2Central", i);
        std::string c = get_string(s2[i], sp);
        if (!t.has(c)) throw ValidationError("unknown-class", sp, "no class named " + c);
        t.sylow2_central.push_back(t.find(c));
    }
    return t;
}

inline void validate_class_table(const ClassTable& t) {
    using detail::join_path;
    std::size_t identities = 0;
    BigInt sum = 0;
    std::set<unsigned long long> primes;
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
        const auto& c = t.classes[i];
        const std::string cp = join_path("classes", i);
        sum += c.size;
        if (c.element_order == 1) {
            ++identities;
            if (c.size != 1) throw ValidationError("identity-class", cp + ".size", "identity class must have size 1");
        }
        if (c.size == 0 || t.order % c.size != 0)
            throw ValidationError("class-size-divides", cp + ".size", "class size must divide the group order");
        if ((t.order / c.size) % c.element_order != 0)
            throw ValidationError("centralizer-order", cp,
                                  "element order must divide the centralizer order |G|/size");
        for (auto p : detail::prime_factors(c.element_order)) primes.insert(p);
    }
    if (identities != 1) throw ValidationError("identity-class", "classes", "expected exactly one class of order 1");
    if (sum != t.order)
        throw ValidationError("class-size-sum", "classes",
                              "sizes sum to " + to_decimal(sum) + ", order is " + to_decimal(t.order));
    for (auto p : primes)
        if (!t.power_maps.count(static_cast<unsigned>(p)))
            throw ValidationError("power-map-missing", join_path("powerMaps", std::to_string(p)),
                                  "no power map for a prime dividing the group order");
    for (const auto& [p, img] : t.power_maps) {
        for (std::size_t c = 0; c < img.size(); ++c) {
            unsigned long long o = t.classes[c].element_order;
            unsigned long long want = o / std::gcd(o, static_cast<unsigned long long>(p));
            if (t.classes[img[c]].element_order != want)
                throw ValidationError("power-map-order",
                                      join_path(join_path("powerMaps", std::to_string(p)), t.classes[c].name),
                                      "class of order " + std::to_string(o) + " maps to " + t.classes[img[c]].name +
                                          " of order " + std::to_string(t.classes[img[c]].element_order) +
                                          ", expected order " + std::to_string(want));
            // C(x) lies in C(x^p), so |C(x)| divides |C(x^p)|.
            if ((t.order / t.classes[img[c]].size) % (t.order / t.classes[c].size) != 0)
                throw ValidationError("power-map-centralizer",
                                      join_path(join_path("powerMaps", std::to_string(p)), t.classes[c].name),
                                      "centralizer order of " + t.classes[c].name + " does not divide that of " +
                                          t.classes[img[c]].name);
        }
    }
    // (x^p)^q = (x^q)^p for every pair of stored primes.
    for (auto pi = t.power_maps.begin(); pi != t.power_maps.end(); ++pi)
        for (auto qi = std::next(pi); qi != t.power_maps.end(); ++qi) {
            const auto &[p, mp] = *pi;
            const auto &[q, mq] = *qi;
            for (std::size_t c = 0; c < t.classes.size(); ++c)
                if (mq[mp[c]] != mp[mq[c]])
                    throw ValidationError("power-map-commute",
                                          join_path(join_path("powerMaps", std::to_string(p)), t.classes[c].name),
                                          "(" + t.classes[c].name + "^" + std::to_string(p) + ")^" + std::to_string(q) +
                                              " is " + t.classes[mq[mp[c]]].name + " but (" + t.classes[c].name + "^" +
                                              std::to_string(q) + ")^" + std::to_string(p) + " is " +
                                              t.classes[mp[mq[c]]].name);
        }
    const BigInt full = two_part(t.order);
    for (std::size_t i = 0; i < t.sylow2_central.size(); ++i) {
        const auto& c = t.classes[t.sylow2_central[i]];
        const std::string sp = join_path("sylow2Central", i);
        if (c.element_order > 2)
            throw ValidationError("sylow2-central", sp, c.name + " is not an involution class");
        if (two_part(t.order / c.size) != full)
            throw ValidationError("sylow2-central", sp,
                                  "centralizer of " + c.name + " does not contain a Sylow 2-subgroup");
    }
}

inline ClassTable load_class_table(std::string_view bytes) {
    ClassTable t = parse_class_table(bytes);
    validate_class_table(t);
    return t;
}

inline Json to_json(const ClassTable& t) {
    Json j;
    j["name"] = t.name;
    j["order"] = to_decimal(t.order);
    j["simple"] = t.simple;
    j["classes"] = Json::array();
    for (const auto& c : t.classes)
        j["classes"].push_back({{"name", c.name}, {"elementOrder", c.element_order}, {"size", to_decimal(c.size)}});
    j["powerMaps"] = Json::object();
    for (const auto& [p, img] : t.power_maps) {
        Json m = Json::object();
        for (std::size_t c = 0; c < img.size(); ++c) m[t.classes[c].name] = t.classes[img[c]].name;
        j["powerMaps"][std::to_string(p)] = std::move(m);
    }
    j["sylow2Central"] = Json::array();
    for (auto c : t.sylow2_central) j["sylow2Central"].push_back(t.classes[c].name);
    return j;
}

inline std::string serialize(const ClassTable& t) { return canonical_dump(to_json(t)); }

// Class table of an enumerated group: ATLAS-style names, prime power maps, and
// the involution classes whose centralizer contains a Sylow 2-subgroup.
inline ClassTable derive_class_table(const std::string& name, bool simple, const GroupIndex& index,
                                     const ClassPartition& cp) {
    ClassTable t;
    t.name = name;
    t.order = index.order();
    t.simple = simple;
    for (const auto& c : cp.classes) t.classes.push_back({c.name, c.element_order, BigInt(c.size)});
    for (auto p : detail::prime_factors(index.order())) {
        std::vector<std::size_t> img;
        for (const auto& c : cp.classes) img.push_back(cp.class_of[index.index_of(power(index.element(c.rep), p))]);
        t.power_maps.emplace(static_cast<unsigned>(p), std::move(img));
    }
    const BigInt full = two_part(t.order);
    for (std::size_t i = 0; i < cp.classes.size(); ++i)
        if (cp.classes[i].element_order == 2 && two_part(t.order / cp.classes[i].size) == full)
            t.sylow2_central.push_back(i);
    t.reindex();
    return t;
}

// ---------------------------------------------------------------- certificates

inline EvidenceItem parse_evidence(const Json& j, const std::string& path) {
    using namespace detail;
    EvidenceItem e;
    std::string kind = get_string(field(j, "kind", path), join_path(path, "kind"));
    auto str = [&](const char* key) { return get_string(field(j, key, path), join_path(path, key)); };
    if (kind == "cyclic-witness") {
        e.kind = EvidenceKind::CyclicWitness;
        e.witness = str("witness");
    } else if (kind == "centralizer-cover") {
        e.kind = EvidenceKind::CentralizerCover;
        e.center = str("center");
        e.witness = str("witness");
    } else if (kind == "permchar") {
        e.kind = EvidenceKind::Permchar;
        e.maximal = str("maximal");
    } else if (kind == "odd-index-maximal") {
        e.kind = EvidenceKind::OddIndexMaximal;
        e.maximal = str("maximal");
    } else if (kind == "external") {
        e.kind = EvidenceKind::External;
        e.description = str("description");
    } else if (kind == "even-maximals") {
        e.kind = EvidenceKind::EvenMaximals;
    } else {
        throw ParseError(join_path(path, "kind"), "unknown evidence kind '" + kind + "'");
    }
    return e;
}

inline Json to_json(const EvidenceItem& e) {
    Json j;
    j["kind"] = kind_name(e.kind);
    switch (e.kind) {
        case EvidenceKind::CyclicWitness: j["witness"] = e.witness; break;
        case EvidenceKind::CentralizerCover:
            j["center"] = e.center;
            j["witness"] = e.witness;
            break;
        case EvidenceKind::Permchar:
        case EvidenceKind::OddIndexMaximal: j["maximal"] = e.maximal; break;
        case EvidenceKind::External: j["description"] = e.description; break;
        case EvidenceKind::EvenMaximals: break;
    }
    return j;
}

inline Certificate parse_certificate(std::string_view bytes) {
    using namespace detail;
    Json j = parse_document(bytes);
    Certificate c;
    c.name = get_string(field(j, "name", ""), "name");
    c.target = get_string(field(j, "target", ""), "target");
    c.bound = get_big(field(j, "bound", ""), "bound");
    const Json& rs = get_array(field(j, "residual", ""), "residual");
    for (std::size_t i = 0; i < rs.size(); ++i) c.residual.push_back(get_string(rs[i], join_path("residual", i)));
    const Json& ev = field(j, "evidence", "");
    if (!ev.is_object()) throw ParseError("evidence", "expected object");
    for (auto it = ev.begin(); it != ev.end(); ++it) {
        const std::string ep = join_path("evidence", it.key());
        get_array(it.value(), ep);
        std::vector<EvidenceItem> items;
        for (std::size_t k = 0; k < it.value().size(); ++k)
            items.push_back(parse_evidence(it.value()[k], join_path(ep, k)));
        c.evidence.emplace(it.key(), std::move(items));
    }
    const Json& ms = get_array(field(j, "maximals", ""), "maximals");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string mp = join_path("maximals", i);
        MaximalInfo m;
        m.name = get_string(field(ms[i], "name", mp), join_path(mp, "name"));
        m.order = get_big(field(ms[i], "order", mp), join_path(mp, "order"));
        if (ms[i].contains("permchar")) {
            const Json& pc = ms[i]["permchar"];
            const std::string pp = join_path(mp, "permchar");
            if (!pc.is_object()) throw ParseError(pp, "expected object");
            std::map<std::string, BigInt> vals;
            for (auto e = pc.begin(); e != pc.end(); ++e) vals[e.key()] = get_big_or_int(e.value(), join_path(pp, e.key()));
            m.permchar = std::move(vals);
        }
        c.maximals.push_back(std::move(m));
    }
    return c;
}

// Cross-checks a certificate against its class table.
inline void validate_certificate(const Certificate& c, const ClassTable& t) {
    using detail::join_path;
    if (c.name != t.name) throw ValidationError("group-name", "name", "certificate is for " + c.name + ", table for " + t.name);
    if (!t.has(c.target)) throw ValidationError("unknown-class", "target", "no class named " + c.target);
    const auto& tc = t.classes[t.find(c.target)];
    if (tc.element_order != 2) throw ValidationError("target", "target", c.target + " is not an involution class");
    if (c.bound != tc.size - 1)
        throw ValidationError("bound", "bound",
                              "bound " + to_decimal(c.bound) + " differs from size(" + c.target + ") - 1 = " +
                                  to_decimal(tc.size - 1));
    std::set<std::string> res;
    for (std::size_t i = 0; i < c.residual.size(); ++i) {
        const std::string rp = join_path("residual", i);
        if (!t.has(c.residual[i])) throw ValidationError("unknown-class", rp, "no class named " + c.residual[i]);
        if (!res.insert(c.residual[i]).second) throw ValidationError("duplicate-name", rp, "repeated " + c.residual[i]);
    }
    std::set<std::string> mnames;
    for (std::size_t i = 0; i < c.maximals.size(); ++i) {
        const auto& m = c.maximals[i];
        const std::string mp = join_path("maximals", i);
        if (!mnames.insert(m.name).second) throw ValidationError("duplicate-name", mp + ".name", "repeated " + m.name);
        if (m.order == 0 || m.order >= t.order || t.order % m.order != 0)
            throw ValidationError("maximal-order", mp + ".order", "order must be a proper divisor of the group order");
        if (m.permchar) {
            for (const auto& [cls, v] : *m.permchar)
                if (!t.has(cls)) throw ValidationError("unknown-class", mp + ".permchar." + cls, "no class named " + cls);
            if (m.permchar->size() != t.classes.size())
                throw ValidationError("permchar-total", mp + ".permchar", "permutation character must list every class");
            const BigInt index = t.order / m.order;
            if (m.permchar->at(t.name_of(t.identity())) != index)
                throw ValidationError("permchar-degree", mp + ".permchar",
                                      "value at the identity must equal the index " + to_decimal(index));
        }
    }
    for (const auto& [cls, items] : c.evidence) {
        const std::string ep = join_path("evidence", cls);
        if (!res.count(cls)) throw ValidationError("evidence-key", ep, cls + " is not a residual class");
        for (std::size_t k = 0; k < items.size(); ++k) {
            const auto& e = items[k];
            const std::string ip = join_path(ep, k);
            for (const std::string* ref : {&e.witness, &e.center})
                if (!ref->empty() && !t.has(*ref)) throw ValidationError("unknown-class", ip, "no class named " + *ref);
            if (!e.maximal.empty() && !mnames.count(e.maximal))
                throw ValidationError("maximal-reference", ip + ".maximal", "no listed maximal named " + e.maximal);
        }
    }
}

inline Certificate load_certificate(std::string_view bytes, const ClassTable& t) {
    Certificate c = parse_certificate(bytes);
    validate_certificate(c, t);
    return c;
}

inline Json to_json(const Certificate& c) {
    Json j;
    j["name"] = c.name;
    j["target"] = c.target;
    j["bound"] = to_decimal(c.bound);
    j["residual"] = c.residual;
    j["evidence"] = Json::object();
    for (const auto& [cls, items] : c.evidence) {
        Json a = Json::array();
        for (const auto& e : items) a.push_back(to_json(e));
        j["evidence"][cls] = std::move(a);
    }
    j["maximals"] = Json::array();
    for (const auto& m : c.maximals) {
        Json mj;
        mj["name"] = m.name;
        mj["order"] = to_decimal(m.order);
        if (m.permchar) {
            Json pc = Json::object();
            for (const auto& [cls, v] : *m.permchar) pc[cls] = to_decimal(v);
            mj["permchar"] = std::move(pc);
        }
        j["maximals"].push_back(std::move(mj));
    }
    return j;
}

inline std::string serialize(const Certificate& c) { return canonical_dump(to_json(c)); }

// ---------------------------------------------------------------- passthrough rows

inline std::vector<PassthroughRow> load_passthrough(std::string_view bytes) {
    using namespace detail;
    Json j = parse_document(bytes);
    const Json& rows = get_array(field(j, "rows", ""), "rows");
    std::vector<PassthroughRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rp = join_path("rows", i);
        PassthroughRow r;
        r.name = get_string(field(rows[i], "name", rp), join_path(rp, "name"));
        r.order = get_big(field(rows[i], "order", rp), join_path(rp, "order"));
        r.bound = get_big(field(rows[i], "bound", rp), join_path(rp, "bound"));
        r.source = get_string(field(rows[i], "source", rp), join_path(rp, "source"));
        if (r.source.empty()) throw ValidationError("source", join_path(rp, "source"), "passthrough rows need a source");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace spreadlab

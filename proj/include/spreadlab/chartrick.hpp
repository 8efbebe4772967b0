#pragma once

#include "groupdata.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace spreadlab {

// Class of d^r for every residue r modulo o(d), built by walking residues
// reachable from 1 through multiplication by primes that have stored maps.
// Entries the stored maps cannot reach are npos.
inline std::vector<std::size_t> residue_classes(const ClassTable& t, std::size_t c) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    const unsigned long long o = t.classes[c].element_order;
    std::vector<std::size_t> cls(o, npos);
    cls[1 % o] = c;
    std::vector<unsigned long long> queue{1 % o};
    for (std::size_t k = 0; k < queue.size(); ++k) {
        unsigned long long r = queue[k];
        for (const auto& [p, img] : t.power_maps) {
            unsigned long long s = (r * p) % o;
            if (cls[s] != npos) continue;
            cls[s] = img[cls[r]];
            queue.push_back(s);
        }
    }
    if (cls[0] == npos) cls[0] = t.identity();
    return cls;
}

inline std::size_t power_class(const ClassTable& t, std::size_t c, unsigned long long i) {
    if (i == 0) throw Error("power_class needs a positive exponent");
    const unsigned long long o = t.classes[c].element_order;
    auto cls = residue_classes(t, c);
    std::size_t r = cls[i % o];
    if (r == static_cast<std::size_t>(-1)) throw MissingPrimeMap(t.classes[c].name, i);
    return r;
}

inline const std::string& power_class(const ClassTable& t, const std::string& c, unsigned long long i) {
    return t.classes[power_class(t, t.find(c), i)].name;
}

// closure[c] lists the classes of d^i, 1 <= i <= o(d), for d in class c.
struct PowerClosure {
    std::vector<std::vector<char>> member;
    bool contains(std::size_t c, std::size_t d) const { return member[c][d] != 0; }
    std::vector<std::size_t> of(std::size_t c) const {
        std::vector<std::size_t> out;
        for (std::size_t d = 0; d < member[c].size(); ++d)
            if (member[c][d]) out.push_back(d);
        return out;
    }
};

inline PowerClosure power_closure(const ClassTable& t) {
    PowerClosure pc;
    const std::size_t n = t.classes.size();
    pc.member.assign(n, std::vector<char>(n, 0));
    for (std::size_t c = 0; c < n; ++c) {
        auto cls = residue_classes(t, c);
        for (std::size_t r = 0; r < cls.size(); ++r) {
            if (cls[r] == static_cast<std::size_t>(-1))
                throw MissingPrimeMap(t.classes[c].name, static_cast<unsigned long long>(r));
            pc.member[c][cls[r]] = 1;
        }
    }
    return pc;
}

struct TrickReport {
    std::size_t target = 0;
    bool target_sylow_central = false;
    struct Elimination {
        std::size_t cls;
        std::size_t witness;  // even-order class with cls in its power closure
    };
    std::vector<Elimination> eliminated;
    std::vector<std::size_t> residual;
};

// If g = h^i with o(h) = 2k then g centralizes the involution z = h^k. The
// centralizer C(z) meets the target class when the target meets the center
// of a Sylow 2-subgroup (that center centralizes some conjugate of z), when z
// itself is central in a Sylow 2-subgroup (C(z) then holds a full Sylow
// 2-subgroup, which meets every 2-class), or when z is in the target class.
inline TrickReport even_order_trick(const ClassTable& t, const std::string& target) {
    TrickReport rep;
    rep.target = t.find(target);
    if (t.classes[rep.target].element_order != 2) throw TargetNotInvolution(target);
    const std::set<std::size_t> central(t.sylow2_central.begin(), t.sylow2_central.end());
    rep.target_sylow_central = central.count(rep.target) != 0;
    const PowerClosure pc = power_closure(t);
    const std::size_t n = t.classes.size(), id = t.identity();
    std::vector<std::size_t> witness(n, n);
    for (std::size_t h = 0; h < n; ++h) {
        const unsigned long long o = t.classes[h].element_order;
        if (o % 2) continue;
        std::size_t z = power_class(t, h, o / 2);
        if (!(rep.target_sylow_central || central.count(z) || z == rep.target)) continue;
        for (std::size_t d = 0; d < n; ++d)
            if (pc.contains(h, d) && witness[d] == n) witness[d] = h;
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (c == id) continue;
        if (witness[c] < n)
            rep.eliminated.push_back({c, witness[c]});
        else
            rep.residual.push_back(c);
    }
    return rep;
}

enum class EvidenceStatus { Verified, AssumedExternal, Failed };

inline const char* status_name(EvidenceStatus s) {
    switch (s) {
        case EvidenceStatus::Verified: return "verified";
        case EvidenceStatus::AssumedExternal: return "assumed-external";
        case EvidenceStatus::Failed: return "failed";
    }
    return "?";
}

struct EvidenceCheck {
    EvidenceItem item;
    EvidenceStatus status = EvidenceStatus::Failed;
    std::string detail;  // failing sub-check, empty otherwise
};

namespace detail {

inline const BigInt* permchar_value(const MaximalInfo& m, const std::string& cls) {
    if (!m.permchar) return nullptr;
    auto it = m.permchar->find(cls);
    return it == m.permchar->end() ? nullptr : &it->second;
}

}  // namespace detail

inline EvidenceCheck check_evidence(const ClassTable& t, const Certificate& cert, const std::string& c,
                                    const EvidenceItem& e, const PowerClosure& pc) {
    if (std::find(cert.residual.begin(), cert.residual.end(), c) == cert.residual.end())
        throw Error(c + " is not a residual class of the certificate");
    EvidenceCheck out{e, EvidenceStatus::Verified, {}};
    auto fail = [&](std::string why) {
        out.status = EvidenceStatus::Failed;
        out.detail = std::move(why);
        return out;
    };
    const std::size_t ci = t.find(c), ti = t.find(cert.target);
    auto need_class = [&](const std::string& name) -> std::size_t {
        if (name.empty() || !t.has(name)) throw Error("malformed evidence: unknown class '" + name + "'");
        return t.find(name);
    };
    auto need_maximal = [&](const std::string& name) -> const MaximalInfo& {
        const MaximalInfo* m = cert.find_maximal(name);
        if (!m) throw Error("malformed evidence: no listed maximal '" + name + "'");
        return *m;
    };
    switch (e.kind) {
        case EvidenceKind::CyclicWitness: {
            std::size_t w = need_class(e.witness);
            if (!pc.contains(w, ci)) return fail(c + " is not a power of " + e.witness);
            if (!pc.contains(w, ti)) return fail(cert.target + " is not a power of " + e.witness);
            return out;
        }
        case EvidenceKind::CentralizerCover: {
            std::size_t z = need_class(e.center), w = need_class(e.witness);
            if (z == t.identity()) return fail("center class is the identity");
            if (!pc.contains(ci, z)) return fail(c + " has no power in " + e.center);
            if (!pc.contains(w, z)) return fail(e.witness + " has no power in " + e.center);
            if (!pc.contains(w, ti)) return fail(e.witness + " has no power in " + cert.target);
            return out;
        }
        case EvidenceKind::Permchar: {
            const MaximalInfo& m = need_maximal(e.maximal);
            const BigInt* vc = detail::permchar_value(m, c);
            const BigInt* vt = detail::permchar_value(m, cert.target);
            if (!vc || !vt) return fail("no permutation character for " + e.maximal);
            if (*vc == 0) return fail("permutation character of " + e.maximal + " vanishes on " + c);
            if (*vt == 0) return fail("permutation character of " + e.maximal + " vanishes on " + cert.target);
            return out;
        }
        case EvidenceKind::OddIndexMaximal: {
            const MaximalInfo& m = need_maximal(e.maximal);
            if (t.order % m.order != 0) return fail("order of " + e.maximal + " does not divide |G|");
            if ((t.order / m.order) % 2 == 0) return fail("index of " + e.maximal + " is even");
            const BigInt* vc = detail::permchar_value(m, c);
            if (!vc) return fail("no permutation character for " + e.maximal);
            if (*vc == 0) return fail("permutation character of " + e.maximal + " vanishes on " + c);
            return out;
        }
        case EvidenceKind::External:
            out.status = EvidenceStatus::AssumedExternal;
            return out;
        case EvidenceKind::EvenMaximals: {
            for (std::size_t k = 0; k < t.classes.size(); ++k)
                if (t.classes[k].element_order == 2 && k != ti)
                    return fail("involution class " + t.classes[k].name + " differs from the target");
            if (cert.maximals.empty()) return fail("no maximal subgroups listed");
            for (const auto& m : cert.maximals) {
                const BigInt* vc = detail::permchar_value(m, c);
                if (vc && *vc == 0) continue;
                if (m.order % 2) return fail("maximal " + m.name + " has odd order and may contain " + c);
            }
            return out;
        }
    }
    return fail("unknown evidence kind");
}

inline EvidenceCheck check_evidence(const ClassTable& t, const Certificate& cert, const std::string& c,
                                    const EvidenceItem& e) {
    return check_evidence(t, cert, c, e, power_closure(t));
}

struct ClassVerdict {
    std::string cls;
    std::vector<EvidenceCheck> checks;
    bool covered = false;  // some item verified or assumed, none failed
};

struct CertificateReport {
    std::string group;
    std::string target;
    bool certified = false;
    BigInt bound;
    TrickReport trick;
    std::vector<ClassVerdict> classes;
    std::vector<std::string> failures;  // "check: detail"
};

inline std::string class_list(const ClassTable& t, const std::vector<std::size_t>& cs) {
    std::string s;
    for (auto c : cs) s += (s.empty() ? "" : ", ") + t.classes[c].name;
    return s;
}

// Runs the trick, demands the certificate's residual list, and checks every
// evidence item. A single failed item blocks certification.
inline CertificateReport certify(const ClassTable& t, const Certificate& cert) {
    CertificateReport rep;
    rep.group = t.name;
    rep.target = cert.target;
    rep.trick = even_order_trick(t, cert.target);
    std::vector<std::size_t> declared;
    for (const auto& r : cert.residual) declared.push_back(t.find(r));
    std::vector<std::size_t> a = rep.trick.residual, b = declared;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw ResidualMismatch(class_list(t, rep.trick.residual), class_list(t, declared));

    rep.bound = t.classes[rep.trick.target].size - 1;
    if (cert.bound != rep.bound)
        rep.failures.push_back("bound: certificate states " + to_decimal(cert.bound) + ", class size gives " +
                               to_decimal(rep.bound));
    const PowerClosure pc = power_closure(t);
    for (auto c : rep.trick.residual) {
        ClassVerdict v;
        v.cls = t.classes[c].name;
        auto it = cert.evidence.find(v.cls);
        bool ok = false, bad = false;
        if (it != cert.evidence.end()) {
            for (const auto& e : it->second) {
                v.checks.push_back(check_evidence(t, cert, v.cls, e, pc));
                if (v.checks.back().status == EvidenceStatus::Failed) {
                    bad = true;
                    rep.failures.push_back("evidence: " + v.cls + " " + e.describe() + ": " + v.checks.back().detail);
                } else {
                    ok = true;
                }
            }
        }
        if (!ok && !bad) rep.failures.push_back("evidence: " + v.cls + " has no evidence");
        v.covered = ok && !bad;
        rep.classes.push_back(std::move(v));
    }
    rep.certified = rep.failures.empty();
    return rep;
}

// Bound from taking X to be a whole class: size(class) - 1.
inline BigInt woldar_bound(const ClassTable& t, const std::string& cls) { return t.classes[t.find(cls)].size - 1; }

}  // namespace spreadlab

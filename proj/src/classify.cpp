#include <algorithm>
#include <map>
#include <sstream>

#include "cellrev/tree.hpp"
#include "level_sets.hpp"

namespace cellrev {

std::string class_name(RevClass c) {
    switch (c) {
        case RevClass::Reversible: return "Reversible";
        case RevClass::StrictlyIrreversible: return "StrictlyIrreversible";
        case RevClass::TrivialSemi: return "TrivialSemi";
        case RevClass::NonTrivialSemi: return "NonTrivialSemi";
    }
    return "?";
}

RevClass parse_class(const std::string& s) {
    for (auto c : {RevClass::Reversible, RevClass::StrictlyIrreversible, RevClass::TrivialSemi,
                   RevClass::NonTrivialSemi})
        if (class_name(c) == s) return c;
    throw ParseError("unknown reversibility class '" + s + "'");
}

bool ReversibilityReport::irreversible_at(std::uint64_t n) const {
    if (cls == RevClass::StrictlyIrreversible) return true;
    if (irreversibleFrom && n >= *irreversibleFrom) return true;
    if (std::find(sporadic.begin(), sporadic.end(), n) != sporadic.end()) return true;
    return std::any_of(expressions.begin(), expressions.end(),
                       [n](const IrrevExpression& e) { return e.contains(n); });
}

std::set<std::uint64_t> reversible_sizes(const ReversibilityReport& report, std::uint64_t upTo) {
    std::set<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= upTo; ++n)
        if (!report.irreversible_at(n)) out.insert(n);
    return out;
}

std::string describe(const ReversibilityReport& r) {
    std::ostringstream o;
    o << class_name(r.cls);
    if (r.cls == RevClass::StrictlyIrreversible) {
        o << "; irreversible for all n";
        return o.str();
    }
    if (!r.expressions.empty()) {
        o << "; irreversible ";
        for (std::size_t i = 0; i < r.expressions.size(); ++i)
            o << (i ? ", " : "") << "n=" << r.expressions[i].modulus << "j+" << r.expressions[i].offset;
        o << " (j≥0)";
    }
    if (r.irreversibleFrom) o << "; irreversible n≥" << *r.irreversibleFrom;
    if (!r.sporadic.empty()) {
        o << "; also irreversible n=";
        for (std::size_t i = 0; i < r.sporadic.size(); ++i) o << (i ? "," : "") << r.sporadic[i];
    }
    o << "; M=" << r.M << "; lastUniqueLevel=" << r.lastUniqueLevel;
    return o.str();
}

namespace {

// Breadth-first build over unique nodes with the generic check on every
// child, stopping at the first violation. Supplies M and the tree height.
void tree_stats(const NodeSpace& sp, ReversibilityReport& rep) {
    NodeStore store(sp);
    const auto r = sp.root();
    store.intern(r.data());
    std::vector<std::uint64_t> buf(sp.node_words());
    std::vector<std::uint32_t> frontier{0};
    int last = 0;
    for (int i = 1; !frontier.empty(); ++i) {
        std::vector<std::uint32_t> fresh;
        for (auto p : frontier)
            for (int x = 0; x < sp.rule().d; ++x) {
                sp.child(store.node(p), x, buf.data());
                const auto [id, inserted] = store.intern(buf.data());
                if (inserted) {
                    fresh.push_back(id);
                    last = i;
                }
                if (!sp.generic_ok(buf.data())) {
                    rep.M = store.size();
                    rep.lastUniqueLevel = last;
                    return;
                }
            }
        frontier = std::move(fresh);
    }
    rep.M = store.size();
    rep.lastUniqueLevel = last;
}

struct Pattern {
    std::vector<bool> irr;  // irr[n], n in [1, tailStart + period)
    std::uint64_t tailStart = 1;
    std::uint64_t period = 1;
    bool at(std::uint64_t n) const {
        if (n >= tailStart) n = tailStart + (n - tailStart) % period;
        return irr[n];
    }
};

// Exact irreversibility pattern over all n from the eventually periodic
// sequence of level sets.
Pattern exact_pattern(const Rule& rule, const NodeSpace& sp) {
    const int m = rule.m;
    ChildCache cache(sp);
    std::vector<std::vector<std::uint32_t>> level{{0}};
    std::map<std::vector<std::uint32_t>, std::size_t> seen{{level[0], 0}};
    std::vector<bool> badGen{false};
    std::vector<std::vector<bool>> badLast;
    auto last_flags = [&](const std::vector<std::uint32_t>& lv) {
        std::vector<bool> f(m, false);
        for (int iota = 1; iota < m; ++iota)
            for (auto u : lv)
                if (!cache.last_ok(u, iota)) {
                    f[iota] = true;
                    break;
                }
        return f;
    };
    badLast.push_back(last_flags(level[0]));
    std::size_t p0 = 0, T = 0;
    std::optional<std::size_t> firstBad;
    constexpr std::size_t kMaxLevels = 200000;
    while (true) {
        if (firstBad && level.size() >= *firstBad + m - 1) break;
        if (level.size() > kMaxLevels) throw DomainError("level sets did not become periodic");
        auto nx = cache.next_level(level.back());
        bool bad = false;
        for (auto u : nx)
            if (!cache.generic_ok(u)) {
                bad = true;
                break;
            }
        const auto p = level.size();
        if (bad && !firstBad) firstBad = p;
        if (!firstBad) {
            if (auto it = seen.find(nx); it != seen.end()) {
                p0 = it->second;
                T = p - p0;
                break;
            }
            seen.emplace(nx, p);
        }
        badLast.push_back(last_flags(nx));
        badGen.push_back(bad);
        level.push_back(std::move(nx));
    }
    auto idx = [&](std::size_t p) { return p < level.size() ? p : p0 + (p - p0) % T; };

    Pattern pat;
    if (firstBad) {
        pat.tailStart = *firstBad + m;
        pat.period = 1;
    } else {
        pat.tailStart = p0 + T + static_cast<std::size_t>(m);
        pat.period = T;
    }
    const std::uint64_t limit = pat.tailStart + pat.period;
    pat.irr.assign(limit, false);
    bool prefixBad = false;  // generic failure at some level in [1, n-m]
    for (std::uint64_t n = 1; n < limit; ++n) {
        if (n < static_cast<std::uint64_t>(m)) {
            pat.irr[n] = !brute_force_reversible(rule, static_cast<int>(n));
            continue;
        }
        const auto g = n - m;
        if (g >= 1 && badGen[idx(g)]) prefixBad = true;
        bool irr = prefixBad;
        for (int iota = 1; iota < m && !irr; ++iota) irr = badLast[idx(n - iota)][iota];
        pat.irr[n] = irr;
    }
    return pat;
}

std::vector<std::uint64_t> divisors(std::uint64_t t) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 1; q <= t; ++q)
        if (t % q == 0) out.push_back(q);
    return out;
}

bool subsumes(const IrrevExpression& big, const IrrevExpression& small) {
    return small.modulus % big.modulus == 0 && small.offset >= big.offset &&
           (small.offset - big.offset) % big.modulus == 0;
}

void fill_from_pattern(const Pattern& pat, ReversibilityReport& rep) {
    const auto n0 = pat.tailStart, T = pat.period;
    bool anyTail = false, allTail = true;
    for (std::uint64_t r = 0; r < T; ++r) {
        anyTail = anyTail || pat.at(n0 + r);
        allTail = allTail && pat.at(n0 + r);
    }
    std::vector<bool> covered(n0 + T, false);
    if (allTail) {
        auto b = n0;
        while (b > 1 && pat.at(b - 1)) --b;
        rep.cls = RevClass::TrivialSemi;
        rep.irreversibleFrom = b;
        for (auto n = b; n < n0 + T; ++n) covered[n] = true;
    } else if (anyTail) {
        rep.cls = RevClass::NonTrivialSemi;
        for (auto q : divisors(T))
            for (std::uint64_t c = 0; c < q; ++c) {
                bool full = true;
                for (std::uint64_t r = 0; r < T && full; ++r)
                    if ((n0 + r) % q == c) full = pat.at(n0 + r);
                if (!full) continue;
                auto s = n0;
                while (s % q != c) ++s;
                while (s > q && pat.at(s - q)) s -= q;
                const IrrevExpression e{q, s};
                if (std::any_of(rep.expressions.begin(), rep.expressions.end(),
                                [&](const IrrevExpression& k) { return subsumes(k, e); }))
                    continue;
                rep.expressions.push_back(e);
                for (auto n = s; n < n0 + T; n += q) covered[n] = true;
            }
    } else {
        rep.cls = RevClass::Reversible;
    }
    for (std::uint64_t n = 1; n < n0 + T; ++n)
        if (pat.at(n) && !covered[n]) rep.sporadic.push_back(n);
    if (rep.cls == RevClass::Reversible && !rep.sporadic.empty()) rep.cls = RevClass::NonTrivialSemi;
}

}  // namespace

ReversibilityReport classify(const Rule& rule) {
    ReversibilityReport rep;
    std::set<int> images;
    for (int s = 0; s < rule.d; ++s) images.insert(rule[rule.uniform_rmt(s)]);
    if (static_cast<int>(images.size()) < rule.d) {
        rep.cls = RevClass::StrictlyIrreversible;
        return rep;
    }
    if (!is_balanced(rule)) {
        // Unbalanced rules are not surjective once n >= m.
        Pattern pat;
        pat.tailStart = static_cast<std::uint64_t>(rule.m);
        pat.irr.assign(pat.tailStart + 1, true);
        for (int n = 1; n < rule.m; ++n) pat.irr[n] = !brute_force_reversible(rule, n);
        fill_from_pattern(pat, rep);
        return rep;
    }
    const NodeSpace sp(rule);
    tree_stats(sp, rep);
    fill_from_pattern(exact_pattern(rule, sp), rep);
    return rep;
}

}  // namespace cellrev

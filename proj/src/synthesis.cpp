#include "cellrev/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cellrev/debruijn.hpp"

namespace cellrev {

namespace {

std::vector<State> identity_perm(int d) {
    std::vector<State> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), State{0});
    return p;
}

std::vector<State> random_perm(int d, Lcg64& rng) {
    auto p = identity_perm(d);
    rng.shuffle(p.begin(), p.end());
    return p;
}

bool distinct_on(const Rule& rule, const std::vector<Rmt>& rmts) {
    std::vector<bool> used(static_cast<std::size_t>(rule.d), false);
    for (auto r : rmts) {
        if (used[rule[r]]) return false;
        used[rule[r]] = true;
    }
    return true;
}

bool constant_on(const Rule& rule, const std::vector<Rmt>& rmts) {
    return std::all_of(rmts.begin(), rmts.end(), [&](Rmt r) { return rule[r] == rule[rmts.front()]; });
}

// Rule with m = 3 where every RMT of Sibl_{x*d+y} maps to f[x][y].
Rule from_sibling_values(int d, const std::vector<std::vector<State>>& f) {
    std::vector<State> table(ipow(d, 3));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) table[static_cast<std::size_t>((x * d + y) * d + z)] = f[x][y];
    return make_rule(d, 3, std::move(table));
}

void all_perms(int d, std::vector<std::vector<State>>& out) {
    auto p = identity_perm(d);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
}

// Calls fn for every tuple of d permutations, first index slowest.
template <class Fn>
void perm_tuples(const std::vector<std::vector<State>>& perms, int d, std::vector<std::size_t>& idx, int pos, Fn&& fn) {
    if (pos == d) {
        fn(idx);
        return;
    }
    for (std::size_t i = 0; i < perms.size(); ++i) {
        idx[pos] = i;
        perm_tuples(perms, d, idx, pos + 1, fn);
    }
}

using Table = std::vector<std::vector<State>>;

Table rows_constant(int d, const std::vector<State>& p) {
    Table f(d, std::vector<State>(d));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) f[x][y] = p[x];
    return f;
}

Table columns_constant(int d, const std::vector<State>& p) {
    Table f(d, std::vector<State>(d));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) f[x][y] = p[y];
    return f;
}

Table rows_permuted(int d, const std::vector<std::vector<State>>& rows) {
    Table f(d, std::vector<State>(d));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) f[x][y] = rows[x][y];
    return f;
}

Table columns_permuted(int d, const std::vector<std::vector<State>>& cols) {
    Table f(d, std::vector<State>(d));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) f[x][y] = cols[y][x];
    return f;
}

Rule strategy_iii_sample(int d, Lcg64& rng) {
    long double fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    const long double small = fact, large = std::pow(fact, static_cast<long double>(d));
    const long double u = static_cast<long double>(rng.next() >> 11) / 9007199254740992.0L * 2 * (small + large);
    const int family = u < small ? 0 : u < small + large ? 1 : u < small + 2 * large ? 2 : 3;
    if (family == 0) return from_sibling_values(d, rows_constant(d, random_perm(d, rng)));
    if (family == 3) return from_sibling_values(d, columns_constant(d, random_perm(d, rng)));
    std::vector<std::vector<State>> ps;
    for (int i = 0; i < d; ++i) ps.push_back(random_perm(d, rng));
    return from_sibling_values(d, family == 1 ? rows_permuted(d, ps) : columns_permuted(d, ps));
}

// ---- decimal heuristic ----

constexpr int kUnassigned = -1;

struct Draft {
    int d = 10;
    std::vector<int> v;  // next state or kUnassigned

    std::size_t k() const { return static_cast<std::size_t>(d) * d; }

    // Longest same-valued chain ending at r (excluding r), walking predecessors.
    int back(Rmt r, int val, int depth) const {
        if (depth == 0) return 0;
        int best = 0;
        const Rmt head = r / static_cast<Rmt>(d);
        for (int t = 0; t < d; ++t) {
            const Rmt p = static_cast<Rmt>(t) * static_cast<Rmt>(k()) + head;
            if (v[p] == val) best = std::max(best, 1 + back(p, val, depth - 1));
            if (best == depth) break;
        }
        return best;
    }
    int fwd(Rmt r, int val, int depth) const {
        if (depth == 0) return 0;
        int best = 0;
        const Rmt tail = r % static_cast<Rmt>(k());
        for (int t = 0; t < d; ++t) {
            const Rmt s = tail * static_cast<Rmt>(d) + static_cast<Rmt>(t);
            if (v[s] == val) best = std::max(best, 1 + fwd(s, val, depth - 1));
            if (best == depth) break;
        }
        return best;
    }
    // Same-value run through r if r took val, over paths of at most cap RMTs.
    int run(Rmt r, int val, int cap) {
        const int saved = v[r];
        v[r] = val;
        const int b = back(r, val, cap - 1);
        const int f = fwd(r, val, cap - 1 - b);
        v[r] = saved;
        return std::min(cap, b + 1 + f);
    }
    bool self_replicating(Rmt r, int val) const { return val == static_cast<int>((r / d) % d); }

    // Per-state successor maps over de Bruijn nodes; Sibl injectivity makes each one functional.
    std::vector<std::vector<int>> next;
    std::vector<int> srNext;  // successor along the self-replicating RMT of each node

    void reset() {
        v.assign(ipow(d, 3), kUnassigned);
        next.assign(static_cast<std::size_t>(d), std::vector<int>(k(), -1));
        srNext.assign(k(), -1);
    }
    void assign(Rmt r, int val) {
        v[r] = val;
        const int u = static_cast<int>(r / d), w = static_cast<int>(r % k());
        next[val][u] = w;
        if (self_replicating(r, val)) srNext[u] = w;
    }
    // True when following map from `from` returns to `to` before stalling or settling in a self-loop.
    bool reaches(const std::vector<int>& map, int from, int to) const {
        for (std::size_t steps = 0; steps <= k() && from >= 0; ++steps) {
            if (from == to) return true;
            const int nx = map[from];
            if (nx == from) return false;
            from = nx;
        }
        return false;
    }
    // Would r -> val close a cycle of two or more RMTs that is all one value or all self-replicating?
    bool closes_cycle(Rmt r, int val) const {
        const int u = static_cast<int>(r / d), w = static_cast<int>(r % k());
        if (u == w) return false;
        if (reaches(next[val], w, u)) return true;
        return self_replicating(r, val) && reaches(srNext, w, u);
    }
};

void set_rmts(Draft& dr, const std::vector<Rmt>& set, int l, Lcg64& rng, SynthesisStats* stats) {
    const int d = dr.d;
    for (auto r : set) {
        if (dr.v[r] != kUnassigned) continue;
        // (a) sibling set stays injective
        std::vector<bool> used(static_cast<std::size_t>(d), false);
        const Rmt base = (r / static_cast<Rmt>(d)) * static_cast<Rmt>(d);
        for (int t = 0; t < d; ++t)
            if (dr.v[base + t] != kUnassigned) used[dr.v[base + t]] = true;
        std::vector<int> cand;
        for (int s = 0; s < d; ++s)
            if (!used[s]) cand.push_back(s);

        // (c) no primary set, visited or not, may end up all one value or all self-replicating
        std::vector<int> keep;
        for (int c : cand)
            if (!dr.closes_cycle(r, c)) keep.push_back(c);
        if (!keep.empty()) cand.swap(keep);

        // (d) runs of equal next states shorter than l
        std::vector<int> runs(cand.size());
        std::vector<int> ok;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            runs[i] = dr.run(r, cand[i], 2 * l);
            if (runs[i] < l) ok.push_back(cand[i]);
        }
        if (!ok.empty()) {
            dr.assign(r, ok[rng.below(static_cast<std::uint32_t>(ok.size()))]);
        } else {
            const auto best = std::min_element(runs.begin(), runs.end()) - runs.begin();
            dr.assign(r, cand[static_cast<std::size_t>(best)]);
            if (stats) ++stats->fallbacks;
        }
    }
}

// Cycles of two or more RMTs that are all one value or all self-replicating.
// Each such map over de Bruijn nodes is functional, so one walk per node finds them.
// When edges is given, the RMTs on those cycles are appended.
int bad_cycles(const std::vector<State>& table, int d, std::vector<Rmt>* edges) {
    const int k = d * d;
    std::vector<int> f(static_cast<std::size_t>(k)), mark(static_cast<std::size_t>(k));
    int total = 0;
    for (int s = 0; s <= d; ++s) {
        for (int u = 0; u < k; ++u) {
            f[u] = -1;
            for (int t = 0; t < d; ++t)
                if (table[static_cast<std::size_t>(u * d + t)] == (s < d ? s : u % d)) {
                    f[u] = (u % d) * d + t;
                    break;
                }
        }
        std::fill(mark.begin(), mark.end(), 0);
        for (int u = 0; u < k; ++u) {
            int x = u;
            while (x >= 0 && mark[x] == 0) {
                mark[x] = u + 1;
                x = f[x];
            }
            if (x >= 0 && mark[x] == u + 1 && f[x] != x) {
                ++total;
                if (edges) {
                    int y = x;
                    do {
                        edges->push_back(static_cast<Rmt>(y * d + f[y] % d));
                        y = f[y];
                    } while (y != x);
                }
            }
        }
    }
    return total;
}

// Swaps next states inside sibling sets, keeping them permutations, until no such cycle is left.
bool repair(std::vector<State>& table, int d, Lcg64& rng, std::size_t budget) {
    std::vector<Rmt> edges;
    int cur = bad_cycles(table, d, &edges);
    for (std::size_t it = 0; cur > 0 && it < budget; ++it) {
        const Rmt r = edges[rng.below(static_cast<std::uint32_t>(edges.size()))];
        const Rmt r2 = (r / d) * d + rng.below(static_cast<std::uint32_t>(d));
        if (r2 == r) continue;
        std::swap(table[r], table[r2]);
        std::vector<Rmt> next;
        const int nb = bad_cycles(table, d, &next);
        if (nb <= cur || rng.below(100) == 0) {
            cur = nb;
            edges.swap(next);
        } else {
            std::swap(table[r], table[r2]);
        }
    }
    return cur == 0;
}

}  // namespace

bool satisfies_strategy_i(const Rule& rule) {
    const auto k = ipow(rule.d, rule.m - 1);
    for (std::size_t i = 0; i < k; ++i)
        if (!distinct_on(rule, equivalent_set(rule.d, rule.m, i))) return false;
    return true;
}

bool satisfies_strategy_ii(const Rule& rule) {
    const auto k = ipow(rule.d, rule.m - 1);
    for (std::size_t j = 0; j < k; ++j)
        if (!distinct_on(rule, sibling_set(rule.d, rule.m, j))) return false;
    return true;
}

std::vector<Rule> strategy_iii_rules(int d) {
    if (d < 2 || d > 4) throw DomainError("STRATEGY III enumeration supports d in 2..4");
    std::vector<std::vector<State>> perms;
    all_perms(d, perms);
    std::vector<Rule> out;
    for (const auto& p : perms) out.push_back(from_sibling_values(d, rows_constant(d, p)));
    std::vector<std::size_t> idx(static_cast<std::size_t>(d));
    auto pick = [&](const std::vector<std::size_t>& ix) {
        std::vector<std::vector<State>> ps;
        for (auto i : ix) ps.push_back(perms[i]);
        return ps;
    };
    perm_tuples(perms, d, idx, 0, [&](const auto& ix) { out.push_back(from_sibling_values(d, rows_permuted(d, pick(ix)))); });
    perm_tuples(perms, d, idx, 0, [&](const auto& ix) { out.push_back(from_sibling_values(d, columns_permuted(d, pick(ix)))); });
    for (const auto& p : perms) out.push_back(from_sibling_values(d, columns_constant(d, p)));
    return out;
}

std::vector<Rule> generate_strategy(const StrategySpec& spec, std::size_t count) {
    if (count < 1) throw DomainError("count must be at least 1");
    if (spec.d < 2 || spec.d > 10 || spec.m < 2) throw DomainError("unsupported d or m");
    Lcg64 rng(spec.rngSeed);
    std::vector<Rule> out;
    out.reserve(count);
    const int d = spec.d, m = spec.m;
    const auto k = ipow(d, m - 1);
    switch (spec.kind) {
        case StrategyKind::StrategyI:
        case StrategyKind::StrategyII:
            for (std::size_t c = 0; c < count; ++c) {
                std::vector<State> table(ipow(d, m));
                for (std::size_t set = 0; set < k; ++set) {
                    const auto rmts = spec.kind == StrategyKind::StrategyI ? equivalent_set(d, m, set) : sibling_set(d, m, set);
                    const auto p = random_perm(d, rng);
                    for (std::size_t t = 0; t < rmts.size(); ++t) table[rmts[t]] = p[t];
                }
                out.push_back(make_rule(d, m, std::move(table)));
            }
            return out;
        case StrategyKind::StrategyIII:
            if (m != 3) throw DomainError("STRATEGY III is defined for m=3");
            for (std::size_t c = 0; c < count; ++c) out.push_back(strategy_iii_sample(d, rng));
            return out;
        case StrategyKind::DecimalHeuristic:
            if (d != 10 || m != 3) throw DomainError("decimal synthesis needs d=10, m=3");
            return synthesize_decimal(count, spec.rngSeed, spec.l);
        case StrategyKind::Permutation:
            if (d != 10 || m != 3) throw DomainError("permutation rules need d=10, m=3");
            for (std::size_t c = 0; c < count; ++c) {
                std::string perm;
                for (auto s : random_perm(10, rng)) perm.push_back(static_cast<char>('0' + s));
                out.push_back(rule_from_permutation(perm));
            }
            return out;
    }
    return out;
}

FilterResult randomness_filter(const Rule& rule, const StrategySpec& spec) {
    if (quiescent_states(rule).size() != 1) return {false, "quiescent states"};
    for (const auto& fp : fixed_point_attractors(rule))
        if (fp.period > 1) return {false, "fixed point"};
    const auto flow = information_flow(rule);
    if (std::min(flow.leftChanges, flow.rightChanges) < spec.minReverseFlow)
        return {false, "reverse flow"};
    if (spec.strict && !trivial_reachability(rule).isolated()) return {false, "trivial reachable"};
    return {true, ""};
}

std::vector<Rule> filter_randomness_candidates(const std::vector<Rule>& rules, const StrategySpec& spec) {
    std::vector<Rule> out;
    for (const auto& r : rules)
        if (randomness_filter(r, spec).pass) out.push_back(r);
    return out;
}

bool equivalent_sets_asymmetric(const Rule& rule) {
    const auto k = ipow(rule.d, rule.m - 1);
    bool allPerm = true;
    for (std::size_t i = 0; i < k; ++i) {
        const auto e = equivalent_set(rule.d, rule.m, i);
        if (constant_on(rule, e)) return false;
        if (!distinct_on(rule, e)) allPerm = false;
    }
    return !allPerm;
}

std::vector<Rule> synthesize_decimal(std::size_t count, std::uint64_t rngSeed, int l, SynthesisStats* stats) {
    if (count < 1) throw DomainError("count must be at least 1");
    if (l < 1) throw DomainError("run limit must be positive");
    constexpr int d = 10;
    static const auto sets = synthesis_primary_sets(d);
    Lcg64 rng(rngSeed);
    std::vector<Rule> out;
    while (out.size() < count) {
        if (stats) ++stats->attempts;
        Draft dr;
        dr.reset();
        // Singletons take distinct values with at least one quiescent state: every per-state
        // and self-replicating map is functional, so anything else forces a longer cycle.
        std::vector<State> uniform;
        do uniform = random_perm(d, rng);
        while (std::none_of(uniform.begin(), uniform.end(), [i = 0](State s) mutable { return s == i++; }));
        for (const auto& s : sets) {
            if (s.size() == 1)
                dr.assign(s.front(), uniform[s.front() / (d * d + d + 1)]);
            else
                set_rmts(dr, s, l, rng, stats);
        }
        std::vector<State> table(dr.v.size());
        for (std::size_t r = 0; r < table.size(); ++r) {
            if (dr.v[r] == kUnassigned) set_rmts(dr, {static_cast<Rmt>(r)}, l, rng, stats);
            table[r] = static_cast<State>(dr.v[r]);
        }
        if (!repair(table, d, rng, 200000)) continue;
        Rule rule = make_rule(d, 3, std::move(table));
        if (!verify_rule(rule) || !equivalent_sets_asymmetric(rule)) continue;
        out.push_back(std::move(rule));
    }
    return out;
}

Rule rule_from_permutation(const std::string& perm) {
    if (perm.size() != 10) throw ParseError("permutation must have 10 digits");
    std::vector<bool> seen(10, false);
    for (char c : perm) {
        if (c < '0' || c > '9' || seen[c - '0']) throw ParseError("not a permutation of 0-9: " + perm);
        seen[c - '0'] = true;
    }
    auto rshift = [](const std::string& s, int by) {
        by %= 10;
        return s.substr(10 - by) + s.substr(0, 10 - by);
    };
    std::vector<std::string> sibl(100);
    sibl[0] = perm;
    for (int i = 1; i < 10; ++i) sibl[i] = rshift(perm, i);
    for (int j = 10; j < 100; ++j) sibl[j] = rshift(sibl[j % 10], j / 10);
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) sibl[j * 10 + i] = sibl[i * 10 + j];
    std::vector<State> table(1000);
    for (int j = 0; j < 100; ++j)
        for (int t = 0; t < 10; ++t) table[static_cast<std::size_t>(10 * j + t)] = static_cast<State>(sibl[j][t] - '0');
    return make_rule(10, 3, std::move(table));
}

std::optional<std::string> permutation_form(const Rule& rule) {
    if (rule.d != 10 || rule.m != 3) return std::nullopt;
    std::string perm;
    for (Rmt r = 0; r < 10; ++r) perm.push_back(static_cast<char>('0' + rule[r]));
    try {
        if (rule_from_permutation(perm) == rule) return perm;
    } catch (const ParseError&) {
    }
    return std::nullopt;
}

}  // namespace cellrev

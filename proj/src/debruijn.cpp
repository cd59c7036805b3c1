#include "cellrev/debruijn.hpp"

#include <algorithm>
#include <set>

#include "cellrev/step.hpp"

namespace cellrev {

Config PrimaryRmtSet::pattern(int d, int m, int lr) const {
    Config c;
    c.reserve(rmts.size());
    const auto p = ipow(d, m - 1 - lr);
    for (auto r : rmts) c.push_back(static_cast<State>((r / p) % d));
    return c;
}

namespace {

using Adj = std::vector<std::vector<std::size_t>>;

Adj build_adj(const DeBruijnGraph& g, const std::function<bool(Rmt)>& keep) {
    Adj adj(g.nodes());
    for (Rmt r = 0; r < g.edges(); ++r)
        if (keep(r)) adj[g.source(r)].push_back(g.target(r));
    return adj;
}

class Johnson {
public:
    Johnson(const DeBruijnGraph& g, const Adj& adj, std::size_t maxCycles)
        : g_(g), adj_(adj), maxCycles_(maxCycles), blocked_(adj.size()), B_(adj.size()) {}

    CycleEnumeration run() {
        for (s_ = 0; s_ < adj_.size() && !out_.truncated; ++s_) {
            std::fill(blocked_.begin(), blocked_.end(), false);
            for (auto& b : B_) b.clear();
            circuit(s_);
        }
        return std::move(out_);
    }

private:
    void emit() {
        if (out_.cycles.size() >= maxCycles_) {
            out_.truncated = true;
            return;
        }
        PrimaryRmtSet p;
        for (std::size_t i = 0; i < stack_.size(); ++i) {
            const auto u = stack_[i];
            const auto v = stack_[(i + 1) % stack_.size()];
            p.rmts.push_back(static_cast<Rmt>(u * g_.d + v % g_.d));
        }
        out_.cycles.push_back(std::move(p));
    }

    void unblock(std::size_t u) {
        blocked_[u] = false;
        auto pending = std::move(B_[u]);
        B_[u].clear();
        for (auto w : pending)
            if (blocked_[w]) unblock(w);
    }

    bool circuit(std::size_t v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = true;
        for (auto w : adj_[v]) {
            if (out_.truncated) break;
            if (w < s_) continue;
            if (w == s_) {
                emit();
                found = true;
            } else if (!blocked_[w] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (auto w : adj_[v])
                if (w >= s_ && std::find(B_[w].begin(), B_[w].end(), v) == B_[w].end()) B_[w].push_back(v);
        }
        stack_.pop_back();
        return found;
    }

    const DeBruijnGraph& g_;
    const Adj& adj_;
    std::size_t maxCycles_;
    std::size_t s_ = 0;
    std::vector<bool> blocked_;
    std::vector<std::vector<std::size_t>> B_;
    std::vector<std::size_t> stack_;
    CycleEnumeration out_;
};

void bounded_dfs(const DeBruijnGraph& g, const Adj& adj, std::size_t s, std::size_t maxLen, std::size_t maxCycles,
                 std::vector<std::size_t>& stack, std::vector<bool>& on, CycleEnumeration& out) {
    const auto v = stack.back();
    for (auto w : adj[v]) {
        if (out.truncated) return;
        if (w < s) continue;
        if (w == s) {
            if (out.cycles.size() >= maxCycles) {
                out.truncated = true;
                return;
            }
            PrimaryRmtSet p;
            for (std::size_t i = 0; i < stack.size(); ++i) {
                const auto a = stack[i];
                const auto b = stack[(i + 1) % stack.size()];
                p.rmts.push_back(static_cast<Rmt>(a * g.d + b % g.d));
            }
            out.cycles.push_back(std::move(p));
        } else if (!on[w] && stack.size() < maxLen) {
            on[w] = true;
            stack.push_back(w);
            bounded_dfs(g, adj, s, maxLen, maxCycles, stack, on, out);
            stack.pop_back();
            on[w] = false;
        }
    }
}

}  // namespace

CycleEnumeration elementary_cycles(int d, int m, const std::function<bool(Rmt)>& keep, std::size_t maxLen,
                                   std::size_t maxCycles) {
    const DeBruijnGraph g{d, m};
    const auto adj = build_adj(g, keep);
    if (maxLen == 0) return Johnson(g, adj, maxCycles).run();
    CycleEnumeration out;
    std::vector<bool> on(adj.size(), false);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < adj.size() && !out.truncated; ++s) {
        stack.assign(1, s);
        on[s] = true;
        bounded_dfs(g, adj, s, maxLen, maxCycles, stack, on, out);
        on[s] = false;
    }
    return out;
}

bool has_long_cycle(int d, int m, const std::function<bool(Rmt)>& keep) {
    const DeBruijnGraph g{d, m};
    const auto adj = build_adj(g, keep);
    const auto n = adj.size();
    // Iterative Tarjan.
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<std::size_t> st;
    long counter = 0;
    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        st.push_back(root);
        onStack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < adj[f.v].size()) {
                const auto w = adj[f.v][f.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    st.push_back(w);
                    onStack[w] = true;
                    call.push_back({w, 0});
                } else if (onStack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const auto v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::size_t size = 0;
                std::size_t w;
                do {
                    w = st.back();
                    st.pop_back();
                    onStack[w] = false;
                    ++size;
                } while (w != v);
                if (size >= 2) return true;
            }
        }
    }
    return false;
}

Config next_configuration(const Rule& rule, const Config& config) {
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config[i] >= rule.d) throw DomainError("cell " + std::to_string(i) + " is not below d");
    if (config.empty()) throw DomainError("configuration must have at least one cell");
    Config out;
    Stepper(rule).step(config, out);
    return out;
}

Config next_configuration_debruijn(const Rule& rule, const Config& config) {
    if (config.empty()) throw DomainError("configuration must have at least one cell");
    const auto n = static_cast<long long>(config.size());
    const auto low = static_cast<Rmt>(rule.set_count());
    auto cell = [&](long long i) {
        const auto v = config[((i % n) + n) % n];
        if (v >= rule.d) throw DomainError("cell value is not below d");
        return v;
    };
    // The first RMT spans cells -lr .. rr; each later one is a sibling of
    // the previous one's suffix.
    Rmt r = 0;
    for (int j = 0; j < rule.m; ++j) r = r * rule.d + cell(j - rule.lr);
    Config out(config.size());
    for (long long i = 0; i < n; ++i) {
        out[i] = rule[r];
        r = (r % low) * rule.d + cell(i + 1 + rule.rr);
    }
    return out;
}

std::vector<PrimaryRmtSet> primary_rmt_sets(int d, int m, std::size_t maxCard) {
    if (maxCard > ipow(d, m - 1)) throw DomainError("cardinality bound exceeds node count");
    auto all = elementary_cycles(d, m, [](Rmt) { return true; }, maxCard, static_cast<std::size_t>(-1)).cycles;
    std::stable_sort(all.begin(), all.end(), [](const PrimaryRmtSet& a, const PrimaryRmtSet& b) {
        return a.cardinality() != b.cardinality() ? a.cardinality() < b.cardinality() : a.rmts < b.rmts;
    });
    return all;
}

std::vector<std::vector<Rmt>> synthesis_primary_sets(int d) {
    std::vector<std::vector<Rmt>> out;
    std::vector<bool> seen(ipow(d, 3), false);
    auto rmt = [d](int a, int b, int c) { return static_cast<Rmt>(a * d * d + b * d + c); };
    auto push = [&](std::vector<Rmt> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (auto r : s) seen[r] = true;
        out.push_back(std::move(s));
    };
    for (int i = 0; i < d; ++i) push({rmt(i, i, i)});
    for (int i = 0; i + 1 < d; ++i)
        for (int j = i + 1; j < d; ++j) push({rmt(i, j, i), rmt(j, i, j)});
    const int k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 1; j < d; ++j) push({rmt(k, i, j), rmt(i, j, k), rmt(j, k, i)});
    for (int l = 0; l < d; ++l)
        for (int i = 1; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int kk = 1; kk < d; ++kk) {
                    if ((l == i && i == j) || (i == j && j == kk) || (j == kk && kk == l) || (kk == l && l == i))
                        continue;
                    std::vector<Rmt> s{rmt(l, i, j), rmt(i, j, kk), rmt(j, kk, l), rmt(kk, l, i)};
                    std::sort(s.begin(), s.end());
                    s.erase(std::unique(s.begin(), s.end()), s.end());
                    if (s.size() < 4) continue;
                    if (std::all_of(s.begin(), s.end(), [&](Rmt r) { return seen[r]; })) continue;
                    push(std::move(s));
                }
    return out;
}

std::vector<FixedPoint> fixed_point_attractors(const Rule& rule) {
    auto cyc = elementary_cycles(rule.d, rule.m, [&](Rmt r) { return is_self_replicating(rule, r); });
    std::vector<FixedPoint> out;
    for (auto& c : cyc.cycles) {
        const auto p = c.cardinality();
        out.push_back({std::move(c), p});
    }
    return out;
}

bool ReachabilityVerdict::isolated() const {
    if (!nontrivialFixedPoints.empty()) return false;
    return std::all_of(reachableTrivials.begin(), reachableTrivials.end(),
                       [](const TrivialWitness& w) { return w.trivialSource; });
}

ReachabilityVerdict trivial_reachability(const Rule& rule) {
    ReachabilityVerdict v;
    for (auto& fp : fixed_point_attractors(rule))
        if (fp.period > 1) v.nontrivialFixedPoints.push_back(std::move(fp));
    for (int s = 0; s < rule.d; ++s) {
        const auto own = rule.uniform_rmt(s);
        auto cyc = elementary_cycles(rule.d, rule.m, [&](Rmt r) { return rule[r] == s && r != own; });
        v.truncated = v.truncated || cyc.truncated;
        for (auto& c : cyc.cycles) {
            const bool trivial = c.cardinality() == 1;
            v.reachableTrivials.push_back({s, std::move(c), trivial});
        }
    }
    return v;
}

bool verify_rule(const Rule& rule) {
    if (has_long_cycle(rule.d, rule.m, [&](Rmt r) { return is_self_replicating(rule, r); })) return false;
    for (int s = 0; s < rule.d; ++s)
        if (has_long_cycle(rule.d, rule.m, [&](Rmt r) { return rule[r] == s; })) return false;
    return true;
}

std::vector<int> quiescent_states(const Rule& rule) {
    std::vector<int> out;
    for (int s = 0; s < rule.d; ++s)
        if (rule[rule.uniform_rmt(s)] == s) out.push_back(s);
    return out;
}

}  // namespace cellrev

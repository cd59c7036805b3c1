#include "cellrev/tree.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <numeric>

#include "cellrev/step.hpp"
#include "level_sets.hpp"

namespace cellrev {

namespace {

void set_bit(std::uint64_t* w, std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
bool get_bit(const std::uint64_t* w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1u; }

void set_range(std::uint64_t* w, std::size_t start, std::size_t len) {
    for (std::size_t i = start; i < start + len; ++i) set_bit(w, i);
}

}  // namespace

NodeSpace::NodeSpace(const Rule& rule)
    : rule_(rule), K_(rule.set_count()), W_((rule.rmt_count() + 63) / 64), N_(rule.rmt_count()) {
    valueMask_.assign(static_cast<std::size_t>(rule.d) * W_, 0);
    for (std::size_t r = 0; r < N_; ++r) set_bit(valueMask_.data() + rule[r] * W_, r);
    valid_.resize(rule.m);
    for (int iota = 1; iota < rule.m; ++iota) {
        const auto span = ipow(rule.d, rule.m - iota);
        const auto reps = ipow(rule.d, iota);
        auto& v = valid_[iota];
        v.assign(span * W_, 0);
        for (std::size_t i = 0; i < span; ++i)
            for (std::size_t t = 0; t < reps; ++t) set_bit(v.data() + i * W_, i + t * span);
    }
}

std::vector<std::uint64_t> NodeSpace::root() const {
    std::vector<std::uint64_t> n(node_words(), 0);
    for (std::size_t k = 0; k < K_; ++k) set_range(n.data() + k * W_, k * rule_.d, rule_.d);
    return n;
}

void NodeSpace::label(const std::uint64_t* node, int x, std::uint64_t* out) const {
    const auto* mask = valueMask_.data() + x * W_;
    for (std::size_t k = 0; k < K_; ++k)
        for (std::size_t w = 0; w < W_; ++w) out[k * W_ + w] = node[k * W_ + w] & mask[w];
}

void NodeSpace::child(const std::uint64_t* node, int x, std::uint64_t* out) const {
    std::memset(out, 0, node_words() * sizeof(std::uint64_t));
    const auto* mask = valueMask_.data() + x * W_;
    const std::size_t d = rule_.d;
    for (std::size_t k = 0; k < K_; ++k) {
        auto* dst = out + k * W_;
        for (std::size_t w = 0; w < W_; ++w) {
            std::uint64_t bits = node[k * W_ + w] & mask[w];
            while (bits) {
                const auto r = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                set_range(dst, d * (r % K_), d);
            }
        }
    }
}

void NodeSpace::restrict_last(const std::uint64_t* node, int iota, std::uint64_t* out) const {
    const auto per = ipow(rule_.d, iota - 1);
    for (std::size_t k = 0; k < K_; ++k) {
        const auto* v = valid_[iota].data() + (k / per) * W_;
        for (std::size_t w = 0; w < W_; ++w) out[k * W_ + w] = node[k * W_ + w] & v[w];
    }
}

std::vector<std::size_t> NodeSpace::counts(const std::uint64_t* node) const {
    std::vector<std::size_t> c(rule_.d, 0);
    for (int x = 0; x < rule_.d; ++x) {
        const auto* mask = valueMask_.data() + x * W_;
        for (std::size_t k = 0; k < K_; ++k)
            for (std::size_t w = 0; w < W_; ++w) c[x] += std::popcount(node[k * W_ + w] & mask[w]);
    }
    return c;
}

bool NodeSpace::generic_ok(const std::uint64_t* node) const {
    const auto c = counts(node);
    return std::all_of(c.begin(), c.end(), [&](std::size_t v) { return v == K_; });
}

bool NodeSpace::last_ok(const std::uint64_t* node, int iota) const {
    const auto per = ipow(rule_.d, iota - 1);
    for (int x = 0; x < rule_.d; ++x) {
        const auto* mask = valueMask_.data() + x * W_;
        std::size_t c = 0;
        for (std::size_t k = 0; k < K_; ++k) {
            const auto* v = valid_[iota].data() + (k / per) * W_;
            for (std::size_t w = 0; w < W_; ++w) c += std::popcount(node[k * W_ + w] & v[w] & mask[w]);
        }
        if (c != per) return false;
    }
    return true;
}

TreeNode decode_node(const NodeSpace& sp, const std::uint64_t* node) {
    TreeNode t;
    t.gamma.resize(sp.gammas());
    for (std::size_t k = 0; k < sp.gammas(); ++k)
        for (std::size_t r = 0; r < sp.rule().rmt_count(); ++r)
            if (get_bit(node + k * sp.words(), r)) t.gamma[k].push_back(static_cast<Rmt>(r));
    return t;
}

std::vector<std::uint64_t> encode_node(const NodeSpace& sp, const TreeNode& node) {
    if (node.gamma.size() != sp.gammas()) throw DomainError("node has wrong number of RMT sets");
    std::vector<std::uint64_t> out(sp.node_words(), 0);
    for (std::size_t k = 0; k < sp.gammas(); ++k)
        for (auto r : node.gamma[k]) {
            if (r >= sp.rule().rmt_count()) throw DomainError("RMT out of range in node");
            set_bit(out.data() + k * sp.words(), r);
        }
    return out;
}

TreeNode root_node(const Rule& rule) {
    const NodeSpace sp(rule);
    return decode_node(sp, sp.root().data());
}

ChildEdge child_node(const TreeNode& node, const Rule& rule, int branch) {
    if (branch < 0 || branch >= rule.d) throw DomainError("branch must be a state below d");
    const NodeSpace sp(rule);
    const auto in = encode_node(sp, node);
    std::vector<std::uint64_t> lab(sp.node_words()), ch(sp.node_words());
    sp.label(in.data(), branch, lab.data());
    sp.child(in.data(), branch, ch.data());
    return {decode_node(sp, lab.data()), decode_node(sp, ch.data())};
}

TreeNode restrict_last_levels(const TreeNode& node, const Rule& rule, int iota) {
    if (iota < 1 || iota > rule.m - 1) throw DomainError("iota must lie in [1, m-1]");
    const NodeSpace sp(rule);
    const auto in = encode_node(sp, node);
    std::vector<std::uint64_t> out(sp.node_words());
    sp.restrict_last(in.data(), iota, out.data());
    return decode_node(sp, out.data());
}

bool is_balanced_node(const TreeNode& node, const Rule& rule) {
    const NodeSpace sp(rule);
    const auto c = sp.counts(encode_node(sp, node).data());
    return std::adjacent_find(c.begin(), c.end(), std::not_equal_to<>()) == c.end();
}

NodeStore::NodeStore(const NodeSpace& sp)
    : stride_(sp.node_words()), index_(64, Hash{this}, Eq{this}) {}

std::size_t NodeStore::Hash::operator()(std::uint32_t id) const {
    const auto* p = s->node(id);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < s->stride_; ++i) {
        h ^= p[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

bool NodeStore::Eq::operator()(std::uint32_t a, std::uint32_t b) const {
    return std::memcmp(s->node(a), s->node(b), s->stride_ * sizeof(std::uint64_t)) == 0;
}

std::pair<std::uint32_t, bool> NodeStore::intern(const std::uint64_t* node) {
    const auto id = static_cast<std::uint32_t>(data_.size() / stride_);
    data_.insert(data_.end(), node, node + stride_);
    auto it = index_.find(id);
    if (it != index_.end()) {
        data_.resize(data_.size() - stride_);
        return {*it, false};
    }
    index_.insert(id);
    return {id, true};
}

ChildCache::ChildCache(const NodeSpace& sp) : sp_(sp), store_(sp), scratch_(sp.node_words()) {
    const auto r = sp.root();
    store_.intern(r.data());
}

std::uint32_t ChildCache::child(std::uint32_t id, int x) {
    const std::size_t d = sp_.rule().d;
    if (kids_.size() < (std::size_t(id) + 1) * d) kids_.resize((std::size_t(store_.size()) + 1) * d, kUnset);
    auto& slot = kids_[std::size_t(id) * d + x];
    if (slot == kUnset) {
        sp_.child(store_.node(id), x, scratch_.data());
        slot = store_.intern(scratch_.data()).first;
    }
    return slot;
}

bool ChildCache::generic_ok(std::uint32_t id) {
    if (gen_.size() <= id) gen_.resize(std::size_t(store_.size()), -1);
    if (gen_[id] < 0) gen_[id] = sp_.generic_ok(store_.node(id));
    return gen_[id];
}

bool ChildCache::last_ok(std::uint32_t id, int iota) {
    const std::size_t m = sp_.rule().m;
    if (last_.size() <= std::size_t(id) * m + iota) last_.resize(std::size_t(store_.size()) * m, -1);
    auto& v = last_[std::size_t(id) * m + iota];
    if (v < 0) v = sp_.last_ok(store_.node(id), iota);
    return v;
}

std::vector<std::uint32_t> ChildCache::next_level(const std::vector<std::uint32_t>& level) {
    std::vector<std::uint32_t> out;
    for (auto u : level)
        for (int x = 0; x < sp_.rule().d; ++x) out.push_back(child(u, x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

long long min_level(const std::set<long long>& s) { return *s.begin(); }

bool can_exist(const std::set<long long>& lev, bool selfLoop, long long x) {
    const auto q = min_level(lev);
    if (x < q) return false;
    if (lev.count(x)) return true;
    if (selfLoop) return true;
    for (auto p : lev)
        if (p > q && (x - q) % (p - q) == 0) return true;
    return false;
}

class Builder {
public:
    Builder(const NodeSpace& sp, long long n) : sp_(sp), store_(sp), n_(n), buf_(sp.node_words()) {}

    // Returns reversible; nullopt when n is too small for loop projection.
    std::optional<bool> run() {
        const int d = sp_.rule().d;
        const int m = sp_.rule().m;
        const auto r = sp_.root();
        store_.intern(r.data());
        lev_.push_back({0});
        sl_.push_back(false);
        kids_.emplace_back();
        links_.emplace_back();
        clev_.push_back(0);
        std::vector<std::uint32_t> frontier{0};
        for (long long i = 1;; ++i) {
            std::vector<std::uint32_t> fresh;
            for (auto p : frontier) {
                for (int x = 0; x < d; ++x) {
                    sp_.child(store_.node(p), x, buf_.data());
                    if (i <= n_ - m && !sp_.generic_ok(buf_.data())) return false;
                    const auto [k, inserted] = store_.intern(buf_.data());
                    links_[p].push_back(k);
                    if (!inserted) {
                        if (!revisit(k, i)) return false;
                        continue;
                    }
                    std::set<long long> nl;
                    for (auto l : lev_[p]) nl.insert(l + 1);
                    lev_.push_back(std::move(nl));
                    sl_.push_back(sl_[p]);
                    kids_.emplace_back();
                    links_.emplace_back();
                    clev_.push_back(static_cast<int>(i));
                    kids_[p].push_back(k);
                    fresh.push_back(k);
                    if (lev_[k].size() > 1 && !verify(k)) return false;
                }
            }
            if (fresh.empty()) return true;
            if (i >= n_ - m + 1) return std::nullopt;
            frontier = std::move(fresh);
        }
    }

    std::size_t size() const { return store_.size(); }
    int last_level() const { return clev_.empty() ? 0 : *std::max_element(clev_.begin(), clev_.end()); }

    void export_tree(MinimizedTree& t) const {
        t.nodeList.clear();
        for (std::uint32_t u = 0; u < store_.size(); ++u) t.nodeList.push_back(decode_node(sp_, store_.node(u)));
        t.nodeLevel = lev_;
        t.selfLoop = sl_;
        t.links = links_;
        t.creationLevel = clev_;
    }

private:
    bool verify(std::uint32_t u) {
        for (int iota = 1; iota < sp_.rule().m; ++iota)
            if (can_exist(lev_[u], sl_[u], n_ - iota) && !sp_.last_ok(store_.node(u), iota)) return false;
        return true;
    }

    bool update(std::uint32_t k) {
        if (!verify(k)) return false;
        for (auto c : kids_[k]) {
            std::set<long long> nl;
            for (auto l : lev_[k]) nl.insert(l + 1);
            lev_[c] = std::move(nl);
            if (sl_[k]) sl_[c] = true;
            if (!update(c)) return false;
        }
        return true;
    }

    // Loop bookkeeping when node k reappears at level i.
    bool revisit(std::uint32_t k, long long i) {
        auto& lev = lev_[k];
        if (lev.count(i)) return true;
        if (lev.size() == 1) {
            lev.insert(i);
            if (i - min_level(lev) == 1) sl_[k] = true;
            return update(k);
        }
        if (sl_[k]) return true;
        const auto q = min_level(lev);
        const auto newLoop = i - q;
        if (newLoop == 1) {
            lev = {i - 1, i};
            sl_[k] = true;
            return update(k);
        }
        for (auto l : std::vector<long long>(lev.begin(), lev.end())) {
            if (l == q) continue;
            const auto old = l - q;
            const auto g = std::gcd(old, newLoop);
            if (g == old) return true;
            if (old == 2 && g == 1) {
                lev = {i - 1, i};
                sl_[k] = true;
                return update(k);
            }
            if (g > 1) {
                lev = {i - g, i};
                return update(k);
            }
        }
        lev.insert(i);
        return update(k);
    }

    const NodeSpace& sp_;
    NodeStore store_;
    long long n_;
    std::vector<std::uint64_t> buf_;
    std::vector<std::set<long long>> lev_;
    std::vector<bool> sl_;
    std::vector<std::vector<std::uint32_t>> kids_;
    std::vector<std::vector<std::uint32_t>> links_;
    std::vector<int> clev_;
};

}  // namespace

FixedSizeResult check_reversible(const Rule& rule, long long n, MinimizedTree* tree) {
    if (n < rule.m) throw DomainError("check_reversible needs n >= m");
    FixedSizeResult res;
    if (!is_balanced(rule)) return res;
    const NodeSpace sp(rule);
    Builder b(sp, n);
    const auto verdict = b.run();
    if (tree) b.export_tree(*tree);
    res.M = b.size();
    res.lastUniqueLevel = b.last_level();
    if (verdict) {
        res.reversible = *verdict;
        return res;
    }
    // n sits below the tree height: walk the explicit level sets instead.
    res.explicitLevels = true;
    ChildCache cache(sp);
    std::vector<std::vector<std::uint32_t>> level{{0}};
    for (long long p = 1; p <= n - 1; ++p) level.push_back(cache.next_level(level.back()));
    res.reversible = true;
    for (long long p = 1; p <= n - rule.m && res.reversible; ++p)
        for (auto u : level[p])
            if (!cache.generic_ok(u)) {
                res.reversible = false;
                break;
            }
    for (int iota = 1; iota < rule.m && res.reversible; ++iota)
        for (auto u : level[n - iota])
            if (!cache.last_ok(u, iota)) {
                res.reversible = false;
                break;
            }
    return res;
}

bool brute_force_reversible(const Rule& rule, int n) {
    if (n < 1) throw DomainError("size must be positive");
    const auto total = ipow(rule.d, n);
    if (n > 40 || total > (std::uint64_t{1} << 28)) throw DomainError("brute force space too large");
    std::vector<bool> seen(total, false);
    Stepper st(rule, Kernel::Scalar);
    Config c(n, 0), out(n);
    for (std::uint64_t code = 0; code < total; ++code) {
        auto v = code;
        for (int i = n - 1; i >= 0; --i) {
            c[i] = static_cast<State>(v % rule.d);
            v /= rule.d;
        }
        st.step(c, out);
        std::uint64_t img = 0;
        for (auto s : out) img = img * rule.d + s;
        if (seen[img]) return false;
        seen[img] = true;
    }
    return true;
}

}  // namespace cellrev

#include "cellrev/rule.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cellrev {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

int Rule::digit(Rmt r, int pos) const {
    return static_cast<int>((r / ipow(d, m - 1 - pos)) % d);
}

Rmt Rule::uniform_rmt(int s) const {
    Rmt r = 0;
    for (int i = 0; i < m; ++i) r = r * d + s;
    return r;
}

std::string Rule::to_string() const {
    std::string s(table.size(), '0');
    for (std::size_t r = 0; r < table.size(); ++r)
        s[table.size() - 1 - r] = static_cast<char>('0' + table[r]);
    return s;
}

int default_left_radius(int m) { return (m - 1) / 2; }

Rule make_rule(int d, int m, std::vector<State> table, int lr) {
    if (d < 2 || d > 10) throw DomainError("state count must be in [2, 10], got " + std::to_string(d));
    if (m < 2) throw DomainError("neighbourhood size must be at least 2, got " + std::to_string(m));
    if (lr < 0) lr = default_left_radius(m);
    if (lr > m - 1) throw DomainError("left radius exceeds neighbourhood");
    const auto want = ipow(d, m);
    if (want > (1u << 24)) throw DomainError("rule table too large");
    if (table.size() != want)
        throw ParseError("rule table has " + std::to_string(table.size()) + " entries, expected " +
                         std::to_string(want));
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r] >= d) throw ParseError("next state " + std::to_string(table[r]) + " at RMT " +
                                            std::to_string(r) + " is not below d");
    Rule rule;
    rule.d = d;
    rule.m = m;
    rule.lr = lr;
    rule.rr = m - 1 - lr;
    rule.table = std::move(table);
    return rule;
}

Rule parse_rule(std::string_view text, int d, int m, int lr) {
    if (d < 2 || d > 10) throw DomainError("state count must be in [2, 10], got " + std::to_string(d));
    if (m < 2) throw DomainError("neighbourhood size must be at least 2, got " + std::to_string(m));
    const auto want = ipow(d, m);
    if (text.size() != want)
        throw ParseError("rule string has length " + std::to_string(text.size()) + ", expected " +
                         std::to_string(want));
    std::vector<State> table(want);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c >= '0' + d)
            throw ParseError("invalid digit '" + std::string(1, c) + "' at index " + std::to_string(i));
        table[want - 1 - i] = static_cast<State>(c - '0');
    }
    return make_rule(d, m, std::move(table), lr);
}

Rule parse_rule_spec(std::string_view text) {
    std::string s(text);
    std::istringstream in(s);
    std::string tok;
    int d = 0, m = 0, lr = -1;
    std::string digits;
    bool header = false;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            digits = tok;
            continue;
        }
        header = true;
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        try {
            if (key == "d") d = std::stoi(val);
            else if (key == "m") m = std::stoi(val);
            else if (key == "lr") lr = std::stoi(val);
            else if (key == "rule") digits = val;
            else throw ParseError("unknown rule header key '" + key + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad value for rule header key '" + key + "'");
        }
    }
    if (digits.empty()) throw ParseError("empty rule");
    if (header && d && m) return parse_rule(digits, d, m, lr);
    int maxDigit = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("non-digit in rule string");
        maxDigit = std::max(maxDigit, c - '0');
    }
    for (int dd = std::max(2, maxDigit + 1); dd <= 10; ++dd) {
        if (d && dd != d) continue;
        std::uint64_t p = dd;
        for (int mm = 1; p <= digits.size(); ++mm, p *= dd)
            if (p == digits.size() && mm >= 2 && (!m || m == mm)) return parse_rule(digits, dd, mm, lr);
    }
    throw ParseError("cannot infer (d, m) from rule string of length " + std::to_string(digits.size()));
}

std::vector<Rmt> sibling_set(int d, int m, std::size_t j) {
    std::vector<Rmt> out(d);
    for (int t = 0; t < d; ++t) out[t] = static_cast<Rmt>(d * j + t);
    (void)m;
    return out;
}

std::vector<Rmt> equivalent_set(int d, int m, std::size_t i) {
    const auto k = ipow(d, m - 1);
    std::vector<Rmt> out(d);
    for (int t = 0; t < d; ++t) out[t] = static_cast<Rmt>(i + t * k);
    return out;
}

bool is_balanced(const Rule& rule) {
    std::vector<std::size_t> c(rule.d, 0);
    for (auto v : rule.table) ++c[v];
    return std::all_of(c.begin(), c.end(), [&](std::size_t x) { return x == rule.set_count(); });
}

Rmt rmt_add(int d, int m, Rmt a, Rmt b) {
    Rmt out = 0, p = 1;
    for (int i = 0; i < m; ++i, p *= d) out += p * (((a / p) % d + (b / p) % d) % d);
    return out;
}

bool additive_on(const Rule& rule, Rmt a, Rmt b) {
    return rule[rmt_add(rule.d, rule.m, a, b)] == (rule[a] + rule[b]) % rule.d;
}

std::optional<std::pair<Rmt, Rmt>> linearity_witness(const Rule& rule) {
    const auto n = static_cast<Rmt>(rule.rmt_count());
    for (Rmt a = 0; a < n; ++a)
        for (Rmt b = a; b < n; ++b)
            if (!additive_on(rule, a, b)) return std::pair{a, b};
    return std::nullopt;
}

bool is_linear(const Rule& rule) { return !linearity_witness(rule); }

bool is_self_replicating(const Rule& rule, Rmt r) { return rule[r] == rule.digit(r, rule.lr); }

std::vector<Rmt> self_replicating_rmts(const Rule& rule) {
    std::vector<Rmt> out;
    for (Rmt r = 0; r < rule.rmt_count(); ++r)
        if (is_self_replicating(rule, r)) out.push_back(r);
    return out;
}

namespace {

int set_score(const Rule& rule, const std::vector<Rmt>& set) {
    std::set<int> values;
    for (auto r : set)
        if (!is_self_replicating(rule, r)) values.insert(rule[r]);
    return static_cast<int>(values.size());
}

}  // namespace

FlowReport information_flow(const Rule& rule) {
    FlowReport f;
    f.totalRmts = static_cast<int>(rule.rmt_count());
    for (std::size_t j = 0; j < rule.set_count(); ++j) {
        f.leftChanges += set_score(rule, sibling_set(rule.d, rule.m, j));
        f.rightChanges += set_score(rule, equivalent_set(rule.d, rule.m, j));
    }
    return f;
}

Rule reflect(const Rule& rule) {
    Rule out = rule;
    std::swap(out.lr, out.rr);
    for (Rmt r = 0; r < rule.rmt_count(); ++r) {
        Rmt rev = 0;
        for (int i = rule.m - 1; i >= 0; --i) rev = rev * rule.d + rule.digit(r, i);
        out.table[rev] = rule[r];
    }
    return out;
}

Rule conjugate(const Rule& rule) {
    Rule out = rule;
    const auto n = rule.rmt_count();
    // Complementing every digit maps RMT r to d^m-1-r.
    for (std::size_t r = 0; r < n; ++r) out.table[r] = static_cast<State>(rule.d - 1 - rule[n - 1 - r]);
    return out;
}

EquivalentRules equivalent_rules(const Rule& rule) {
    return {reflect(rule), conjugate(rule), conjugate(reflect(rule))};
}

Config parse_config(std::string_view text, int d) {
    if (text.empty()) throw ParseError("empty configuration");
    Config c(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch < '0' || ch > '9') throw ParseError("invalid cell '" + std::string(1, ch) + "' at index " + std::to_string(i));
        if (ch - '0' >= d) throw DomainError("cell " + std::to_string(i) + " has state " + std::string(1, ch) + " >= d");
        c[i] = static_cast<State>(ch - '0');
    }
    return c;
}

std::string config_string(const Config& c) {
    std::string s(c.size(), '0');
    for (std::size_t i = 0; i < c.size(); ++i) s[i] = static_cast<char>('0' + c[i]);
    return s;
}

Rule eca(unsigned code) {
    if (code > 255) throw DomainError("elementary rule code must be below 256");
    std::vector<State> t(8);
    for (int r = 0; r < 8; ++r) t[r] = (code >> r) & 1u;
    return make_rule(2, 3, std::move(t));
}

unsigned eca_code(const Rule& rule) {
    if (rule.d != 2 || rule.m != 3) throw DomainError("not an elementary rule");
    unsigned c = 0;
    for (int r = 0; r < 8; ++r) c |= unsigned(rule[r]) << r;
    return c;
}

}  // namespace cellrev

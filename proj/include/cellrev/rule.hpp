#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cellrev {

// Malformed rule text, configuration text or seed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input outside the domain of an operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using State = std::uint8_t;
using Rmt = std::uint32_t;

std::uint64_t ipow(std::uint64_t base, unsigned exp);

// d-state, m-neighbourhood local map. table[r] is the next state of RMT r,
// where r = sum x_i * d^(m-1-i) over the neighbourhood x_0 .. x_{m-1}.
struct Rule {
    int d = 2;
    int m = 3;
    int lr = 1;
    int rr = 1;
    std::vector<State> table;

    std::size_t rmt_count() const { return table.size(); }
    // d^(m-1): number of sibling sets, equivalent sets and de Bruijn nodes.
    std::size_t set_count() const { return table.size() / static_cast<std::size_t>(d); }
    State operator[](std::size_t r) const { return table[r]; }

    // Digit at neighbourhood position pos (0 = leftmost).
    int digit(Rmt r, int pos) const;
    Rmt uniform_rmt(int s) const;

    // RMT d^m-1 first, RMT 0 last.
    std::string to_string() const;

    bool operator==(const Rule&) const = default;
};

int default_left_radius(int m);

// Validates and builds a rule; lr < 0 selects default_left_radius(m).
Rule make_rule(int d, int m, std::vector<State> table, int lr = -1);
Rule parse_rule(std::string_view text, int d, int m, int lr = -1);

// Accepts `d=<d> m=<m> rule=<digits>` or a bare digit string whose length
// and alphabet are resolved to the smallest matching (d, m).
Rule parse_rule_spec(std::string_view text);

std::vector<Rmt> sibling_set(int d, int m, std::size_t j);
std::vector<Rmt> equivalent_set(int d, int m, std::size_t i);

bool is_balanced(const Rule& rule);

// Digit-wise RMT addition mod d.
Rmt rmt_add(int d, int m, Rmt a, Rmt b);
bool additive_on(const Rule& rule, Rmt a, Rmt b);
// First failing pair (a <= b), or nothing when the rule is linear.
std::optional<std::pair<Rmt, Rmt>> linearity_witness(const Rule& rule);
bool is_linear(const Rule& rule);

bool is_self_replicating(const Rule& rule, Rmt r);
std::vector<Rmt> self_replicating_rmts(const Rule& rule);

struct FlowReport {
    int leftChanges = 0;
    int rightChanges = 0;
    int totalRmts = 0;
    double leftRate() const { return totalRmts ? double(leftChanges) / totalRmts : 0.0; }
    double rightRate() const { return totalRmts ? double(rightChanges) / totalRmts : 0.0; }
};

FlowReport information_flow(const Rule& rule);

struct EquivalentRules {
    Rule reflection;
    Rule conjugation;
    Rule conj_reflection;
};

Rule reflect(const Rule& rule);
Rule conjugate(const Rule& rule);
EquivalentRules equivalent_rules(const Rule& rule);

using Config = std::vector<State>;

// Digit string to cells; every digit must be below d.
Config parse_config(std::string_view text, int d);
std::string config_string(const Config& c);

// Wolfram code of an elementary rule and back.
Rule eca(unsigned code);
unsigned eca_code(const Rule& rule);

}  // namespace cellrev

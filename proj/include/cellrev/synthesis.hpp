#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cellrev/rule.hpp"

namespace cellrev {

// 64-bit LCG (Knuth's MMIX constants); bounded draws use the high 32 bits
// so sequences match on every platform.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(((next() >> 32) * bound) >> 32);
    }
    template <class It>
    void shuffle(It first, It last) {
        for (auto n = last - first; n > 1; --n) std::iter_swap(first + (n - 1), first + below(static_cast<std::uint32_t>(n)));
    }

private:
    std::linear_congruential_engine<std::uint64_t, 6364136223846793005ull, 1442695040888963407ull, 0> eng_;
};

enum class StrategyKind { StrategyI, StrategyII, StrategyIII, DecimalHeuristic, Permutation };

struct StrategySpec {
    StrategyKind kind = StrategyKind::StrategyII;
    int d = 3;
    int m = 3;
    std::uint64_t rngSeed = 1;
    int l = 3;               // longest allowed run of equal next states
    int minReverseFlow = 8;  // lower bound on the weaker flow direction
    bool strict = true;      // also require isolated trivial configurations
};

bool satisfies_strategy_i(const Rule& rule);   // Equi sets carry distinct values
bool satisfies_strategy_ii(const Rule& rule);  // Sibl sets carry distinct values

// Every STRATEGY III combination, clause 2 alternatives first, then clause 3.
// Rules satisfying more than one clause appear once per clause. m = 3.
std::vector<Rule> strategy_iii_rules(int d);

std::vector<Rule> generate_strategy(const StrategySpec& spec, std::size_t count);

struct FilterResult {
    bool pass = false;
    std::string reason;  // first failed condition
};

FilterResult randomness_filter(const Rule& rule, const StrategySpec& spec);
std::vector<Rule> filter_randomness_candidates(const std::vector<Rule>& rules, const StrategySpec& spec);

// No Equi set is constant and not every Equi set is a permutation.
bool equivalent_sets_asymmetric(const Rule& rule);

struct SynthesisStats {
    std::size_t attempts = 0;
    std::size_t fallbacks = 0;  // RMTs assigned by the minimal-run fallback
};

std::vector<Rule> synthesize_decimal(std::size_t count, std::uint64_t rngSeed, int l = 3,
                                     SynthesisStats* stats = nullptr);

// Sibl_0 = perm, Sibl_i = perm >> i, Sibl_j = Sibl_{j mod 10} >> floor(j/10),
// then Sibl_{10j+i} <- Sibl_{10i+j} for i < j. Position t of a sibling
// string is the next state of RMT 10j+t.
Rule rule_from_permutation(const std::string& perm);
// Sibl_0 string when the rule is exactly rule_from_permutation of it.
std::optional<std::string> permutation_form(const Rule& rule);

}  // namespace cellrev

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "cellrev/rule.hpp"

namespace cellrev {

// Precomputed masks shared by every node of one rule. A node is stored as
// d^(m-1) bit vectors (the Gamma_k), each `words` 64-bit words long.
class NodeSpace {
public:
    explicit NodeSpace(const Rule& rule);

    const Rule& rule() const { return rule_; }
    std::size_t gammas() const { return K_; }
    std::size_t words() const { return W_; }
    std::size_t node_words() const { return K_ * W_; }

    std::vector<std::uint64_t> root() const;
    // Edge label of branch x: Gamma_k restricted to RMTs with next state x.
    void label(const std::uint64_t* node, int x, std::uint64_t* out) const;
    // Child of branch x: union of Sibl_{r mod d^(m-1)} over the label.
    void child(const std::uint64_t* node, int x, std::uint64_t* out) const;
    void restrict_last(const std::uint64_t* node, int iota, std::uint64_t* out) const;

    // Per-state RMT counts with multiplicity over all Gamma_k.
    std::vector<std::size_t> counts(const std::uint64_t* node) const;
    bool generic_ok(const std::uint64_t* node) const;
    bool last_ok(const std::uint64_t* node, int iota) const;

private:
    Rule rule_;
    std::size_t K_, W_, N_;
    std::vector<std::uint64_t> valueMask_;            // d masks
    std::vector<std::vector<std::uint64_t>> valid_;   // per iota: d^(m-iota) masks
};

struct TreeNode {
    std::vector<std::vector<Rmt>> gamma;
    bool operator==(const TreeNode&) const = default;
};

TreeNode decode_node(const NodeSpace& sp, const std::uint64_t* node);
std::vector<std::uint64_t> encode_node(const NodeSpace& sp, const TreeNode& node);

TreeNode root_node(const Rule& rule);
struct ChildEdge {
    TreeNode label;
    TreeNode child;
};
ChildEdge child_node(const TreeNode& node, const Rule& rule, int branch);
TreeNode restrict_last_levels(const TreeNode& node, const Rule& rule, int iota);
bool is_balanced_node(const TreeNode& node, const Rule& rule);

// Deduplicating node storage; ids are dense and stable.
class NodeStore {
public:
    explicit NodeStore(const NodeSpace& sp);

    // Returns (id, inserted).
    std::pair<std::uint32_t, bool> intern(const std::uint64_t* node);
    const std::uint64_t* node(std::uint32_t id) const { return data_.data() + std::size_t(id) * stride_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(data_.size() / stride_) - pending_; }

private:
    struct Hash {
        const NodeStore* s;
        std::size_t operator()(std::uint32_t id) const;
    };
    struct Eq {
        const NodeStore* s;
        bool operator()(std::uint32_t a, std::uint32_t b) const;
    };
    std::size_t stride_;
    std::vector<std::uint64_t> data_;
    std::uint32_t pending_ = 0;
    std::unordered_set<std::uint32_t, Hash, Eq> index_;
};

// Unique nodes with level sets and loop bookkeeping, as built by the
// fixed-size decision procedure.
struct MinimizedTree {
    std::vector<TreeNode> nodeList;
    std::vector<std::set<long long>> nodeLevel;
    std::vector<bool> selfLoop;
    std::vector<std::vector<std::uint32_t>> links;  // parent -> child, graph edges incl. back links
    std::vector<int> creationLevel;
};

struct FixedSizeResult {
    bool reversible = false;
    std::size_t M = 0;
    int lastUniqueLevel = 0;
    // Decided from explicit level sets because n is below the tree height.
    bool explicitLevels = false;
};

// Fixed-n decision. n >= m, else DomainError.
FixedSizeResult check_reversible(const Rule& rule, long long n, MinimizedTree* tree = nullptr);

// Injectivity of G_n by evolving all d^n configurations.
bool brute_force_reversible(const Rule& rule, int n);

enum class RevClass { Reversible, StrictlyIrreversible, TrivialSemi, NonTrivialSemi };
std::string class_name(RevClass c);
RevClass parse_class(const std::string& s);

struct IrrevExpression {
    std::uint64_t modulus = 1;
    std::uint64_t offset = 1;
    bool contains(std::uint64_t n) const { return n >= offset && (n - offset) % modulus == 0; }
    bool operator==(const IrrevExpression&) const = default;
};

struct ReversibilityReport {
    RevClass cls = RevClass::Reversible;
    std::vector<IrrevExpression> expressions;
    // TrivialSemi: every n >= irreversibleFrom is irreversible.
    std::optional<std::uint64_t> irreversibleFrom;
    // Irreversible sizes covered by no expression and below any bound.
    std::vector<std::uint64_t> sporadic;
    std::size_t M = 0;
    int lastUniqueLevel = 0;

    bool irreversible_at(std::uint64_t n) const;
    bool operator==(const ReversibilityReport&) const = default;
};

ReversibilityReport classify(const Rule& rule);
std::set<std::uint64_t> reversible_sizes(const ReversibilityReport& report, std::uint64_t upTo);
std::string describe(const ReversibilityReport& report);

}  // namespace cellrev

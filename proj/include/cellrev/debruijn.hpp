#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cellrev/rule.hpp"

namespace cellrev {

// Nodes are the (m-1)-digit words; RMT r is the edge floor(r/d) -> r mod d^(m-1).
struct DeBruijnGraph {
    int d = 2;
    int m = 3;
    std::size_t nodes() const { return ipow(d, m - 1); }
    std::size_t edges() const { return ipow(d, m); }
    std::size_t source(Rmt r) const { return r / static_cast<Rmt>(d); }
    std::size_t target(Rmt r) const { return r % nodes(); }
};

// RMTs of one elementary cycle, rotated so the smallest RMT comes first.
struct PrimaryRmtSet {
    std::vector<Rmt> rmts;
    std::size_t cardinality() const { return rmts.size(); }
    // Smallest configuration whose RMT sequence is this cycle.
    Config pattern(int d, int m, int lr) const;
    bool operator==(const PrimaryRmtSet&) const = default;
};

struct CycleEnumeration {
    std::vector<PrimaryRmtSet> cycles;
    bool truncated = false;
};

// Elementary cycles of the de Bruijn subgraph whose edges satisfy keep.
// maxLen = 0 means unbounded; enumeration stops after maxCycles cycles.
CycleEnumeration elementary_cycles(int d, int m, const std::function<bool(Rmt)>& keep, std::size_t maxLen = 0,
                                   std::size_t maxCycles = 1000000);

// True when the subgraph has a cycle through two or more nodes.
bool has_long_cycle(int d, int m, const std::function<bool(Rmt)>& keep);

Config next_configuration(const Rule& rule, const Config& config);
// Same map, walking the RMT sequence along de Bruijn edges.
Config next_configuration_debruijn(const Rule& rule, const Config& config);

std::vector<PrimaryRmtSet> primary_rmt_sets(int d, int m, std::size_t maxCard);

// The primary sets visited, in order, by the decimal synthesis heuristic:
// singletons, {iji, jij}, {kij, ijk, jki} with k = 0, then the 4-sets
// {lij, ijk, jkl, kli} that still contain an unvisited RMT. m = 3 only.
std::vector<std::vector<Rmt>> synthesis_primary_sets(int d);

struct FixedPoint {
    PrimaryRmtSet cycle;
    std::size_t period = 1;
};

std::vector<FixedPoint> fixed_point_attractors(const Rule& rule);

struct TrivialWitness {
    int state = 0;           // target s of s^n
    PrimaryRmtSet cycle;     // predecessor RMT cycle
    bool trivialSource = false;  // the predecessor is itself t^n, t != s
};

struct ReachabilityVerdict {
    std::vector<FixedPoint> nontrivialFixedPoints;
    std::vector<TrivialWitness> reachableTrivials;
    bool truncated = false;
    // No non-trivial fixed point and no non-trivial predecessor of any s^n.
    bool isolated() const;
};

ReachabilityVerdict trivial_reachability(const Rule& rule);

// verifyRule: self-replicating and per-state subgraphs carry no cycle
// longer than a self-loop. Uses SCCs, so it never enumerates.
bool verify_rule(const Rule& rule);

std::vector<int> quiescent_states(const Rule& rule);

}  // namespace cellrev

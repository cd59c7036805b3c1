#pragma once

#include <cstdint>
#include <vector>

#include "cellrev/tree.hpp"

namespace cellrev {

// Interned nodes with memoised children and per-node checks. Node 0 is the root.
class ChildCache {
public:
    explicit ChildCache(const NodeSpace& sp);

    std::uint32_t child(std::uint32_t id, int x);
    bool generic_ok(std::uint32_t id);
    bool last_ok(std::uint32_t id, int iota);
    // Sorted, duplicate-free set of all children of a level.
    std::vector<std::uint32_t> next_level(const std::vector<std::uint32_t>& level);

    std::uint32_t size() const { return store_.size(); }

private:
    static constexpr std::uint32_t kUnset = 0xffffffffu;
    const NodeSpace& sp_;
    NodeStore store_;
    std::vector<std::uint64_t> scratch_;
    std::vector<std::uint32_t> kids_;
    std::vector<signed char> gen_;
    std::vector<signed char> last_;
};

}  // namespace cellrev

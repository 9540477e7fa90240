#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ksforge/mmp.hpp"

namespace ksforge {

/// A cyclic chain of m >= 3 distinct edges: cyclically consecutive edges
/// share exactly one vertex (the junction), non-consecutive edges share
/// none, and the m junctions are pairwise distinct.
struct Loop {
    std::vector<std::size_t> edges;
    std::vector<VertexId> junctions;  // junctions[i] joins edges[i] and edges[i+1 mod m]

    [[nodiscard]] std::size_t order() const { return edges.size(); }
};

[[nodiscard]] bool is_valid_loop(const Hypergraph& h, const Loop& loop);

struct LoopSearchOptions {
    /// Search nodes before giving up; 0 = unlimited.
    std::uint64_t node_budget = 0;
};

enum class LoopStatus { Exact, BudgetExceeded };

struct LoopResult {
    LoopStatus status = LoopStatus::Exact;
    std::size_t order = 0;  // best found; a lower bound when the budget ran out
    std::optional<Loop> witness;
    std::uint64_t nodes = 0;
};

/// Longest loop by backtracking over simple edge paths, each loop rooted
/// at its smallest edge index and traversed in one direction only.
[[nodiscard]] LoopResult find_max_loop(const Hypergraph& h, LoopSearchOptions opts = {});

[[nodiscard]] inline std::size_t max_loop_order(const Hypergraph& h) { return find_max_loop(h).order; }

}  // namespace ksforge

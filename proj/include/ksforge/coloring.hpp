#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ksforge/mmp.hpp"

namespace ksforge {

/// A total 0/1 assignment. Vertices that belong to no edge are set to 0.
struct Coloring {
    std::vector<std::uint8_t> values;

    /// Every edge has exactly one vertex valued 1.
    [[nodiscard]] bool admissible(const Hypergraph& h) const;
};

/// Depth-first search with unit propagation. Branches on the unassigned
/// vertex occurring in the most edges that do not yet hold a 1, trying 1
/// before 0. Deterministic: the same input always yields the same witness.
[[nodiscard]] std::optional<Coloring> find_coloring(const Hypergraph& h);

/// A KS hypergraph in the combinatorial sense: no admissible coloring.
[[nodiscard]] inline bool is_noncolorable(const Hypergraph& h) { return !find_coloring(h).has_value(); }

}  // namespace ksforge

#pragma once

// Parity proofs: with an odd number of edges and every vertex in an even
// number of them, the count of 1s over all edges would be both odd (one per
// edge) and even (each vertex counted an even number of times), so no
// admissible coloring exists.

#include <cstddef>
#include <functional>
#include <vector>

#include "ksforge/mmp.hpp"

namespace ksforge {

struct ParityVerdict {
    bool holds = false;
    bool edge_count_odd = false;
    std::vector<VertexId> offending_vertices;  // referenced vertices of odd degree
};

[[nodiscard]] ParityVerdict parity_proof(const Hypergraph& h);

/// Emits every set of `tetrads` edges of h in which each covered vertex
/// lies in exactly two chosen edges. Each solution is reported once as
/// ascending edge indices of h, in lexicographic order. The sink returns
/// false to stop. Throws std::invalid_argument unless tetrads is odd and
/// at most the edge count.
void parity_subset_search(const Hypergraph& h, std::size_t tetrads,
                          const std::function<bool(const std::vector<std::size_t>&)>& sink);

/// Convenience wrapper returning each solution as a sub-hypergraph of h
/// (original labels, not renormalized).
[[nodiscard]] std::vector<Hypergraph> parity_subsets(const Hypergraph& h, std::size_t tetrads);

}  // namespace ksforge

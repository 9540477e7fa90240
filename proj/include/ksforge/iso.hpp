#pragma once

// Canonical labeling and isomorphism rejection for MMP hypergraphs.
//
// The hypergraph is treated as its bipartite vertex/edge incidence graph.
// Colour refinement runs to a fixpoint, then vertices of the first
// non-singleton cell are individualized one at a time. Each discrete leaf
// yields a labeling; the canonical labeling is the one whose relabeled,
// sorted edge list is lexicographically smallest. Automorphisms discovered
// at equal leaves prune sibling branches that lie in the same orbit.

#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "ksforge/mmp.hpp"

namespace ksforge {

struct CanonicalForm {
    /// vertex count, edge count, then the sorted canonical edges flattened.
    std::vector<std::uint32_t> words;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& f) const noexcept;
};

struct CanonicalLabeling {
    CanonicalForm form;
    /// labeling[v] is the canonical label of vertex v.
    std::vector<VertexId> labeling;
};

/// mapping[v] is the vertex of the second hypergraph that v maps to.
struct IsoMapping {
    std::vector<VertexId> mapping;
};

[[nodiscard]] CanonicalLabeling canonical_labeling(const Hypergraph& h);
[[nodiscard]] CanonicalForm canonical_form(const Hypergraph& h);
/// The hypergraph relabeled canonically, edges sorted ascending. Its MMP
/// text is the canonical line.
[[nodiscard]] Hypergraph canonical_hypergraph(const Hypergraph& h);

/// Checks that `m` is a bijection carrying the edges of a onto those of b.
[[nodiscard]] bool verify_mapping(const Hypergraph& a, const Hypergraph& b, const IsoMapping& m);

[[nodiscard]] std::optional<IsoMapping> are_isomorphic(const Hypergraph& a, const Hypergraph& b);

class IsoDeduper {
public:
    bool insert(const Hypergraph& h) { return insert(canonical_form(h)); }
    bool insert(const CanonicalForm& f) { return seen_.insert(f).second; }
    [[nodiscard]] std::size_t size() const { return seen_.size(); }

private:
    std::unordered_set<CanonicalForm, CanonicalFormHash> seen_;
};

/// First representative of each isomorphism class, in input order.
[[nodiscard]] std::vector<Hypergraph> dedupe_iso(const std::vector<Hypergraph>& stream);

}  // namespace ksforge

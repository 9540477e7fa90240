#pragma once

// MMP hypergraphs: vertices are rays, edges are tetrads of mutually
// orthogonal rays. Textual form is one character per vertex, comma-separated
// edges, terminated by a period, e.g. "1234,4567,789A.".

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ksforge {

using VertexId = std::uint32_t;

inline constexpr std::size_t kEdgeSize = 4;
inline constexpr std::size_t kMaxTextVertices = 61;

/// Four distinct vertices in display order (as parsed). Compare with
/// sorted() when set semantics are wanted.
struct Edge {
    std::array<VertexId, kEdgeSize> v{};

    [[nodiscard]] Edge sorted() const;
    [[nodiscard]] bool contains(VertexId x) const;
    /// Number of vertices shared with another edge.
    [[nodiscard]] int shared(const Edge& other) const;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class MmpError : public std::runtime_error {
public:
    enum class Kind { BadCharacter, EdgeSize, RepeatedVertex, DuplicateEdge, Overlap, VertexRange, Alphabet, Empty };

    MmpError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct ValidateOptions {
    /// Reject two edges that share three vertices (in four dimensions they
    /// would be the same tetrad).
    bool check_overlap = true;
};

class Hypergraph {
public:
    Hypergraph() = default;
    /// Validates and throws MmpError on any structural violation.
    Hypergraph(std::size_t vertex_count, std::vector<Edge> edges, ValidateOptions opts = {});

    [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(std::size_t i) const { return edges_.at(i); }

    /// Per-vertex edge-membership counts.
    [[nodiscard]] std::vector<std::size_t> degrees() const;
    /// Bipartite vertex/edge incidence structure forms a single component.
    /// Unreferenced vertices are ignored.
    [[nodiscard]] bool is_connected() const;
    /// Copy with edges[i] removed for every i in `removed` (ascending, unique).
    [[nodiscard]] Hypergraph without_edges(const std::vector<std::size_t>& removed) const;
    /// Copy restricted to the listed edges, in the given order.
    [[nodiscard]] Hypergraph with_edges(const std::vector<std::size_t>& kept) const;
    /// Sorted edges of sorted vertices; equal keys mean equal edge sets.
    [[nodiscard]] std::vector<Edge> exact_key() const;

    /// Same vertex count and edge list, comparing each edge as a set.
    [[nodiscard]] bool same_as(const Hypergraph& other) const;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
};

struct ParseResult {
    Hypergraph graph;
    bool missing_period = false;
};

[[nodiscard]] int label_value(char c);
[[nodiscard]] char label_char(VertexId v);

/// Whitespace and line breaks inside the text are ignored.
[[nodiscard]] ParseResult parse_mmp(std::string_view text, ValidateOptions opts = {});
[[nodiscard]] std::string serialize_mmp(const Hypergraph& h);
/// Relabels vertices in order of first appearance, dropping unreferenced ones.
[[nodiscard]] Hypergraph renormalize(const Hypergraph& h);

/// One MMP line per hypergraph; '#' lines and blank lines are skipped.
struct MmpLine {
    std::size_t line_number = 0;
    std::string text;
};
[[nodiscard]] std::vector<MmpLine> read_mmp_lines(std::istream& in);

struct ExactKeyHash {
    std::size_t operator()(const std::vector<Edge>& key) const noexcept;
};

}  // namespace ksforge

#include "ksforge/mmp.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace ksforge {

Edge Edge::sorted() const {
    Edge e = *this;
    std::sort(e.v.begin(), e.v.end());
    return e;
}

bool Edge::contains(VertexId x) const {
    return std::find(v.begin(), v.end(), x) != v.end();
}

int Edge::shared(const Edge& other) const {
    int n = 0;
    for (VertexId a : v) n += other.contains(a) ? 1 : 0;
    return n;
}

Hypergraph::Hypergraph(std::size_t vertex_count, std::vector<Edge> edges, ValidateOptions opts)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    std::set<std::array<VertexId, kEdgeSize>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge s = edges_[i].sorted();
        if (s.v.back() >= vertex_count_)
            throw MmpError(MmpError::Kind::VertexRange,
                           "edge " + std::to_string(i + 1) + " references vertex outside [0, N)");
        for (std::size_t j = 1; j < kEdgeSize; ++j)
            if (s.v[j] == s.v[j - 1])
                throw MmpError(MmpError::Kind::RepeatedVertex,
                               "edge " + std::to_string(i + 1) + " repeats a vertex");
        if (!seen.insert(s.v).second)
            throw MmpError(MmpError::Kind::DuplicateEdge, "edge " + std::to_string(i + 1) + " is a duplicate");
    }
    if (opts.check_overlap) {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (std::size_t j = i + 1; j < edges_.size(); ++j)
                if (edges_[i].shared(edges_[j]) > 2)
                    throw MmpError(MmpError::Kind::Overlap, "edges " + std::to_string(i + 1) + " and " +
                                                                std::to_string(j + 1) + " share three vertices");
    }
}

std::vector<std::size_t> Hypergraph::degrees() const {
    std::vector<std::size_t> d(vertex_count_, 0);
    for (const Edge& e : edges_)
        for (VertexId v : e.v) ++d[v];
    return d;
}

bool Hypergraph::is_connected() const {
    if (edges_.empty()) return true;
    std::vector<VertexId> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), VertexId{0});
    auto find = [&](VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : edges_)
        for (std::size_t j = 1; j < kEdgeSize; ++j) parent[find(e.v[j])] = find(e.v[0]);
    const VertexId root = find(edges_.front().v[0]);
    return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return find(e.v[0]) == root; });
}

Hypergraph Hypergraph::without_edges(const std::vector<std::size_t>& removed) const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size() - std::min(removed.size(), edges_.size()));
    auto it = removed.begin();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (it != removed.end() && *it == i) {
            ++it;
            continue;
        }
        kept.push_back(edges_[i]);
    }
    Hypergraph h;
    h.vertex_count_ = vertex_count_;
    h.edges_ = std::move(kept);
    return h;
}

Hypergraph Hypergraph::with_edges(const std::vector<std::size_t>& kept) const {
    Hypergraph h;
    h.vertex_count_ = vertex_count_;
    h.edges_.reserve(kept.size());
    for (std::size_t i : kept) h.edges_.push_back(edges_.at(i));
    return h;
}

std::vector<Edge> Hypergraph::exact_key() const {
    std::vector<Edge> key;
    key.reserve(edges_.size());
    for (const Edge& e : edges_) key.push_back(e.sorted());
    std::sort(key.begin(), key.end(), [](const Edge& a, const Edge& b) { return a.v < b.v; });
    return key;
}

bool Hypergraph::same_as(const Hypergraph& other) const {
    if (vertex_count_ != other.vertex_count_ || edges_.size() != other.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].sorted() != other.edges_[i].sorted()) return false;
    return true;
}

int label_value(char c) {
    if (c >= '1' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    if (c >= 'a' && c <= 'z') return c - 'a' + 36;
    return -1;
}

char label_char(VertexId v) {
    const VertexId value = v + 1;
    if (value <= 9) return static_cast<char>('0' + value);
    if (value <= 35) return static_cast<char>('A' + (value - 10));
    if (value <= 61) return static_cast<char>('a' + (value - 36));
    throw MmpError(MmpError::Kind::Alphabet, "vertex " + std::to_string(v) + " has no MMP label");
}

ParseResult parse_mmp(std::string_view text, ValidateOptions opts) {
    std::vector<Edge> edges;
    std::vector<VertexId> current;
    VertexId max_vertex = 0;
    bool any = false;
    bool terminated = false;

    auto close_edge = [&]() {
        if (current.size() != kEdgeSize)
            throw MmpError(MmpError::Kind::EdgeSize, "edge " + std::to_string(edges.size() + 1) + " has " +
                                                         std::to_string(current.size()) + " vertices, expected 4");
        Edge e;
        std::copy(current.begin(), current.end(), e.v.begin());
        edges.push_back(e);
        current.clear();
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (terminated)
            throw MmpError(MmpError::Kind::BadCharacter, "text after terminal period at offset " + std::to_string(pos));
        if (c == ',') {
            close_edge();
        } else if (c == '.') {
            if (!any) throw MmpError(MmpError::Kind::Empty, "empty MMP text");
            close_edge();
            terminated = true;
        } else {
            const int value = label_value(c);
            if (value < 0)
                throw MmpError(MmpError::Kind::BadCharacter,
                               std::string("invalid label '") + c + "' at offset " + std::to_string(pos));
            const auto v = static_cast<VertexId>(value - 1);
            current.push_back(v);
            max_vertex = std::max(max_vertex, v);
            any = true;
        }
    }
    if (!any) throw MmpError(MmpError::Kind::Empty, "empty MMP text");

    ParseResult result;
    if (!terminated) {
        close_edge();
        result.missing_period = true;
    }
    result.graph = Hypergraph(max_vertex + 1, std::move(edges), opts);
    return result;
}

std::string serialize_mmp(const Hypergraph& h) {
    if (h.vertex_count() > kMaxTextVertices)
        throw MmpError(MmpError::Kind::Alphabet, "MMP text supports at most 61 vertices, got " +
                                                     std::to_string(h.vertex_count()));
    std::string out;
    out.reserve(h.edge_count() * 5);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if (i) out.push_back(',');
        for (VertexId v : h.edge(i).v) out.push_back(label_char(v));
    }
    out.push_back('.');
    return out;
}

Hypergraph renormalize(const Hypergraph& h) {
    constexpr VertexId unset = ~VertexId{0};
    std::vector<VertexId> relabel(h.vertex_count(), unset);
    VertexId next = 0;
    std::vector<Edge> edges = h.edges();
    for (Edge& e : edges)
        for (VertexId& v : e.v) {
            if (relabel[v] == unset) relabel[v] = next++;
            v = relabel[v];
        }
    // Validation already held for the input.
    return Hypergraph(next, std::move(edges), ValidateOptions{.check_overlap = false});
}

std::vector<MmpLine> read_mmp_lines(std::istream& in) {
    std::vector<MmpLine> lines;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back({n, line});
    }
    return lines;
}

std::size_t ExactKeyHash::operator()(const std::vector<Edge>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const Edge& e : key)
        for (VertexId v : e.v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
    return h;
}

}  // namespace ksforge

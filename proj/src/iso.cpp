#include "ksforge/iso.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace ksforge {

std::size_t CanonicalFormHash::operator()(const CanonicalForm& f) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t w : f.words) h = (h ^ w) * 0x100000001b3ull;
    return h;
}

namespace {

// Ordered partition of the incidence graph's nodes. Nodes 0..N-1 are
// hypergraph vertices, N..N+B-1 are edges. color[x] is the position where
// x's cell starts in `order`.
struct Partition {
    std::vector<int> color;
    std::vector<int> order;
};

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Hypergraph& h) : h_(h), n_vertices_(h.vertex_count()) {
        const std::size_t n = n_vertices_ + h.edge_count();
        std::vector<std::vector<int>> adj(n);
        for (std::size_t e = 0; e < h.edge_count(); ++e)
            for (VertexId v : h.edge(e).v) {
                adj[v].push_back(static_cast<int>(n_vertices_ + e));
                adj[n_vertices_ + e].push_back(static_cast<int>(v));
            }
        offset_.assign(n + 1, 0);
        for (std::size_t x = 0; x < n; ++x) offset_[x + 1] = offset_[x] + adj[x].size();
        for (const auto& a : adj) neighbors_.insert(neighbors_.end(), a.begin(), a.end());
        sig_.resize(neighbors_.size());
    }

    CanonicalLabeling run() {
        const std::size_t n = offset_.size() - 1;
        Partition root;
        root.order.resize(n);
        std::iota(root.order.begin(), root.order.end(), 0);
        root.color.assign(n, 0);
        for (std::size_t x = n_vertices_; x < n; ++x) root.color[x] = static_cast<int>(n_vertices_);
        refine(root);
        std::vector<VertexId> path;
        search(root, path);

        CanonicalLabeling out;
        out.labeling = best_label_;
        out.form.words.reserve(2 + best_cert_.size());
        out.form.words.push_back(static_cast<std::uint32_t>(n_vertices_));
        out.form.words.push_back(static_cast<std::uint32_t>(h_.edge_count()));
        out.form.words.insert(out.form.words.end(), best_cert_.begin(), best_cert_.end());
        return out;
    }

private:
    void refine(Partition& p) {
        const std::size_t n = p.order.size();
        std::size_t cells = count_cells(p);
        for (;;) {
            for (std::size_t x = 0; x < n; ++x) {
                auto first = sig_.begin() + static_cast<std::ptrdiff_t>(offset_[x]);
                auto last = sig_.begin() + static_cast<std::ptrdiff_t>(offset_[x + 1]);
                for (std::size_t i = offset_[x]; i < offset_[x + 1]; ++i) sig_[i] = p.color[neighbors_[i]];
                std::sort(first, last);
            }
            auto less = [&](int a, int b) {
                return std::lexicographical_compare(sig_.begin() + offset_[a], sig_.begin() + offset_[a + 1],
                                                    sig_.begin() + offset_[b], sig_.begin() + offset_[b + 1]);
            };
            auto same = [&](int a, int b) { return !less(a, b) && !less(b, a); };

            std::vector<int> next_color(n);
            std::size_t start = 0;
            while (start < n) {
                std::size_t end = start + 1;
                while (end < n && p.color[p.order[end]] == p.color[p.order[start]]) ++end;
                if (end - start > 1)
                    std::sort(p.order.begin() + static_cast<std::ptrdiff_t>(start),
                              p.order.begin() + static_cast<std::ptrdiff_t>(end), less);
                std::size_t run = start;
                for (std::size_t i = start; i < end; ++i) {
                    if (i > start && !same(p.order[i - 1], p.order[i])) run = i;
                    next_color[static_cast<std::size_t>(p.order[i])] = static_cast<int>(run);
                }
                start = end;
            }
            p.color = std::move(next_color);
            const std::size_t now = count_cells(p);
            if (now == cells) return;
            cells = now;
        }
    }

    static std::size_t count_cells(const Partition& p) {
        std::size_t cells = 0;
        for (std::size_t i = 0; i < p.order.size(); ++i)
            if (i == 0 || p.color[p.order[i]] != p.color[p.order[i - 1]]) ++cells;
        return cells;
    }

    // Returns the depth the search should resume at; INT_MAX for "no jump".
    int search(const Partition& p, std::vector<VertexId>& path) {
        const int depth = static_cast<int>(path.size());

        // First non-singleton cell among vertex positions.
        std::size_t cell_start = n_vertices_, cell_end = n_vertices_;
        for (std::size_t i = 0; i < n_vertices_;) {
            std::size_t j = i + 1;
            while (j < n_vertices_ && p.color[p.order[j]] == p.color[p.order[i]]) ++j;
            if (j - i > 1) {
                cell_start = i;
                cell_end = j;
                break;
            }
            i = j;
        }
        if (cell_start == n_vertices_) return leaf(p, path);

        std::vector<VertexId> cell(p.order.begin() + static_cast<std::ptrdiff_t>(cell_start),
                                   p.order.begin() + static_cast<std::ptrdiff_t>(cell_end));
        std::sort(cell.begin(), cell.end());
        std::vector<VertexId> explored;
        std::vector<VertexId> orbit;
        std::size_t orbit_auts = SIZE_MAX;

        for (VertexId u : cell) {
            if (!explored.empty()) {
                if (orbit_auts != automorphisms_.size()) {
                    orbit = orbits_fixing(path);
                    orbit_auts = automorphisms_.size();
                }
                const bool equivalent = std::any_of(explored.begin(), explored.end(),
                                                    [&](VertexId x) { return orbit[x] == orbit[u]; });
                if (equivalent) continue;
            }
            explored.push_back(u);

            Partition child = p;
            const int start = static_cast<int>(cell_start);
            for (std::size_t i = cell_start; i < cell_end; ++i) child.color[p.order[i]] = start + 1;
            child.color[u] = start;
            auto pos = std::find(child.order.begin() + start, child.order.begin() + static_cast<std::ptrdiff_t>(cell_end),
                                 static_cast<int>(u));
            std::iter_swap(child.order.begin() + start, pos);
            refine(child);

            path.push_back(u);
            const int jump = search(child, path);
            path.pop_back();
            if (jump < depth) return jump;
        }
        return INT_MAX;
    }

    int leaf(const Partition& p, const std::vector<VertexId>& path) {
        std::vector<VertexId> label(n_vertices_);
        for (std::size_t v = 0; v < n_vertices_; ++v) label[v] = static_cast<VertexId>(p.color[v]);
        std::vector<std::uint32_t> cert = certificate(label);

        if (first_label_.empty()) {
            first_label_ = best_label_ = label;
            first_cert_ = best_cert_ = std::move(cert);
            first_path_ = best_path_ = path;
            return INT_MAX;
        }
        if (cert == first_cert_) {
            record_automorphism(first_label_, label);
            return common_prefix(path, first_path_);
        }
        if (cert == best_cert_) {
            record_automorphism(best_label_, label);
            return common_prefix(path, best_path_);
        }
        if (cert < best_cert_) {
            best_label_ = std::move(label);
            best_cert_ = std::move(cert);
            best_path_ = path;
        }
        return INT_MAX;
    }

    std::vector<std::uint32_t> certificate(const std::vector<VertexId>& label) const {
        std::vector<std::array<VertexId, kEdgeSize>> edges;
        edges.reserve(h_.edge_count());
        for (const Edge& e : h_.edges()) {
            std::array<VertexId, kEdgeSize> r{};
            for (std::size_t i = 0; i < kEdgeSize; ++i) r[i] = label[e.v[i]];
            std::sort(r.begin(), r.end());
            edges.push_back(r);
        }
        std::sort(edges.begin(), edges.end());
        std::vector<std::uint32_t> cert;
        cert.reserve(edges.size() * kEdgeSize);
        for (const auto& r : edges) cert.insert(cert.end(), r.begin(), r.end());
        return cert;
    }

    // Both labelings produce the same relabeled hypergraph, so
    // reference^-1 . current is an automorphism.
    void record_automorphism(const std::vector<VertexId>& reference, const std::vector<VertexId>& current) {
        if (automorphisms_.size() >= kMaxStoredAutomorphisms) return;
        std::vector<VertexId> inverse(n_vertices_);
        for (std::size_t v = 0; v < n_vertices_; ++v) inverse[reference[v]] = static_cast<VertexId>(v);
        std::vector<VertexId> gamma(n_vertices_);
        for (std::size_t v = 0; v < n_vertices_; ++v) gamma[v] = inverse[current[v]];
        automorphisms_.push_back(std::move(gamma));
    }

    std::vector<VertexId> orbits_fixing(const std::vector<VertexId>& path) const {
        std::vector<VertexId> parent(n_vertices_);
        std::iota(parent.begin(), parent.end(), VertexId{0});
        auto find = [&](VertexId x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& gamma : automorphisms_) {
            const bool fixes = std::all_of(path.begin(), path.end(), [&](VertexId v) { return gamma[v] == v; });
            if (!fixes) continue;
            for (std::size_t v = 0; v < n_vertices_; ++v) {
                const VertexId a = find(static_cast<VertexId>(v)), b = find(gamma[v]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        std::vector<VertexId> orbit(n_vertices_);
        for (std::size_t v = 0; v < n_vertices_; ++v) orbit[v] = find(static_cast<VertexId>(v));
        return orbit;
    }

    static int common_prefix(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
        std::size_t i = 0;
        while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
        return static_cast<int>(i);
    }

    static constexpr std::size_t kMaxStoredAutomorphisms = 256;

    const Hypergraph& h_;
    std::size_t n_vertices_;
    std::vector<std::size_t> offset_;
    std::vector<int> neighbors_;
    std::vector<int> sig_;

    std::vector<VertexId> first_label_, best_label_;
    std::vector<std::uint32_t> first_cert_, best_cert_;
    std::vector<VertexId> first_path_, best_path_;
    std::vector<std::vector<VertexId>> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Hypergraph& h) {
    if (h.vertex_count() == 0) {
        CanonicalLabeling out;
        out.form.words = {0, static_cast<std::uint32_t>(h.edge_count())};
        return out;
    }
    return CanonicalSearch(h).run();
}

CanonicalForm canonical_form(const Hypergraph& h) {
    return canonical_labeling(h).form;
}

Hypergraph canonical_hypergraph(const Hypergraph& h) {
    const CanonicalForm form = canonical_form(h);
    std::vector<Edge> edges(h.edge_count());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = 0; j < kEdgeSize; ++j) edges[i].v[j] = form.words[2 + i * kEdgeSize + j];
    return Hypergraph(h.vertex_count(), std::move(edges), ValidateOptions{.check_overlap = false});
}

bool verify_mapping(const Hypergraph& a, const Hypergraph& b, const IsoMapping& m) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (m.mapping.size() != a.vertex_count()) return false;
    std::vector<bool> hit(b.vertex_count(), false);
    for (VertexId w : m.mapping) {
        if (w >= b.vertex_count() || hit[w]) return false;
        hit[w] = true;
    }
    const std::vector<Edge> target = b.exact_key();
    std::vector<Edge> image;
    image.reserve(a.edge_count());
    for (const Edge& e : a.edges()) {
        Edge t;
        for (std::size_t i = 0; i < kEdgeSize; ++i) t.v[i] = m.mapping[e.v[i]];
        image.push_back(t.sorted());
    }
    std::sort(image.begin(), image.end(), [](const Edge& x, const Edge& y) { return x.v < y.v; });
    return image == target;
}

std::optional<IsoMapping> are_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
    const CanonicalLabeling la = canonical_labeling(a);
    const CanonicalLabeling lb = canonical_labeling(b);
    if (la.form != lb.form) return std::nullopt;
    std::vector<VertexId> from_label(b.vertex_count());
    for (std::size_t v = 0; v < b.vertex_count(); ++v) from_label[lb.labeling[v]] = static_cast<VertexId>(v);
    IsoMapping m;
    m.mapping.resize(a.vertex_count());
    for (std::size_t v = 0; v < a.vertex_count(); ++v) m.mapping[v] = from_label[la.labeling[v]];
    if (!verify_mapping(a, b, m)) return std::nullopt;
    return m;
}

std::vector<Hypergraph> dedupe_iso(const std::vector<Hypergraph>& stream) {
    IsoDeduper seen;
    std::vector<Hypergraph> out;
    for (const Hypergraph& h : stream)
        if (seen.insert(h)) out.push_back(h);
    return out;
}

}  // namespace ksforge

#pragma once

// Shared fixtures and brute-force oracles for the unit tests. The oracles
// are deliberately naive: exhaustive enumeration with no pruning, written
// independently of the library's search code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ksforge/mmp.hpp"
#include "ksforge/pipeline.hpp"

namespace testsupport {

using ksforge::Edge;
using ksforge::Hypergraph;
using ksforge::VertexId;

inline const std::vector<ksforge::CorpusEntry>& corpus() {
    static const auto entries = ksforge::load_corpus(KSFORGE_CORPUS);
    return entries;
}

inline const ksforge::CorpusEntry& entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw std::runtime_error("no corpus entry " + name);
}

inline Hypergraph graph(const std::string& name) { return ksforge::parse_mmp(entry(name).mmp).graph; }

inline Edge edge(VertexId a, VertexId b, VertexId c, VertexId d) { return Edge{{a, b, c, d}}; }

// Random vertex permutation plus edge shuffle and within-edge shuffle.
inline Hypergraph relabel(const Hypergraph& h, std::mt19937_64& rng, std::vector<VertexId>* perm_out = nullptr) {
    std::vector<VertexId> perm(h.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        Edge f;
        for (std::size_t i = 0; i < 4; ++i) f.v[i] = perm[e.v[i]];
        std::shuffle(f.v.begin(), f.v.end(), rng);
        edges.push_back(f);
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    if (perm_out) *perm_out = perm;
    return Hypergraph(h.vertex_count(), std::move(edges));
}

// Random valid hypergraph: b distinct edges over at most n vertices, no two
// sharing three vertices, renormalized.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n, std::size_t b) {
    std::vector<Edge> edges;
    std::vector<VertexId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int attempts = 0; edges.size() < b && attempts < 1000; ++attempts) {
        std::shuffle(pool.begin(), pool.end(), rng);
        Edge e{{pool[0], pool[1], pool[2], pool[3]}};
        bool ok = true;
        for (const Edge& f : edges) ok = ok && e.shared(f) <= 2;
        if (ok) edges.push_back(e);
    }
    return ksforge::renormalize(Hypergraph(n, std::move(edges)));
}

// Bank of small hypergraphs: every combination of size and density is
// represented, including dense ones where most instances are non-colorable.
inline std::vector<Hypergraph> small_bank(std::uint64_t seed, std::size_t per_shape) {
    std::mt19937_64 rng(seed);
    std::vector<Hypergraph> bank;
    for (std::size_t b = 1; b <= 6; ++b)
        for (std::size_t n = 4; n <= std::min<std::size_t>(4 * b, 14); ++n)
            for (std::size_t i = 0; i < per_shape; ++i) bank.push_back(random_hypergraph(rng, n, b));
    return bank;
}

// ---- oracles --------------------------------------------------------------

inline bool brute_colorable(const Hypergraph& h) {
    const std::size_t n = h.vertex_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const Edge& e : h.edges()) {
            int ones = 0;
            for (VertexId v : e.v) ones += (mask >> v) & 1;
            if (ones != 1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

inline bool brute_critical(const Hypergraph& h) {
    if (brute_colorable(h)) return false;
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        if (!brute_colorable(h.without_edges({e}))) return false;
    return true;
}

// A subset of edges forms a loop iff, inside the subset, every edge meets
// exactly two others, each in exactly one vertex, the meeting graph is
// connected, and the meeting vertices are pairwise distinct.
inline bool subset_is_loop(const Hypergraph& h, const std::vector<std::size_t>& s) {
    const std::size_t m = s.size();
    if (m < 3) return false;
    std::vector<std::vector<std::size_t>> adj(m);
    std::set<VertexId> junctions;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Edge& a = h.edge(s[i]);
            const Edge& b = h.edge(s[j]);
            const int shared = a.shared(b);
            if (shared == 0) continue;
            if (shared > 1) return false;
            adj[i].push_back(j);
            adj[j].push_back(i);
            for (VertexId v : a.v)
                if (b.contains(v)) junctions.insert(v);
            ++pairs;
        }
    for (const auto& a : adj)
        if (a.size() != 2) return false;
    if (junctions.size() != pairs) return false;
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : adj[x])
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
    }
    return reached == m;
}

inline std::size_t brute_max_loop(const Hypergraph& h) {
    const std::size_t b = h.edge_count();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << b); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < b; ++i)
            if ((mask >> i) & 1) s.push_back(i);
        if (s.size() > best && subset_is_loop(h, s)) best = s.size();
    }
    return best;
}

// All t-subsets of edges in which each covered vertex has degree exactly 2.
inline std::vector<std::vector<std::size_t>> brute_parity_subsets(const Hypergraph& h, std::size_t t) {
    const std::size_t b = h.edge_count();
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(b, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(t), true);
    do {
        std::vector<std::size_t> s;
        std::map<VertexId, int> deg;
        for (std::size_t i = 0; i < b; ++i)
            if (pick[i]) {
                s.push_back(i);
                for (VertexId v : h.edge(i).v) ++deg[v];
            }
        if (std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second == 2; })) out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// Isomorphism by trying every vertex permutation (small N only).
inline bool brute_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    const auto target = b.exact_key();
    std::vector<VertexId> perm(a.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<Edge> edges;
        for (const Edge& e : a.edges()) {
            Edge f;
            for (std::size_t i = 0; i < 4; ++i) f.v[i] = perm[e.v[i]];
            edges.push_back(f);
        }
        if (Hypergraph(a.vertex_count(), edges, {.check_overlap = false}).exact_key() == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace testsupport

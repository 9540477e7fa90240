#include "ksforge/parity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ksforge {

ParityVerdict parity_proof(const Hypergraph& h) {
    ParityVerdict verdict;
    verdict.edge_count_odd = h.edge_count() % 2 == 1;
    const std::vector<std::size_t> deg = h.degrees();
    for (std::size_t v = 0; v < deg.size(); ++v)
        if (deg[v] % 2 == 1) verdict.offending_vertices.push_back(static_cast<VertexId>(v));
    verdict.holds = verdict.edge_count_odd && verdict.offending_vertices.empty();
    return verdict;
}

namespace {

// Solutions are unions of closed components. A component is grown from its
// smallest edge (the seed) by repeatedly taking a vertex covered once and
// branching on the edges that could cover it a second time; the final
// solution fixes which edge that is, so each solution is reached once.
class ParitySearch {
public:
    ParitySearch(const Hypergraph& h, std::size_t tetrads,
                 const std::function<bool(const std::vector<std::size_t>&)>& sink)
        : h_(h), target_(tetrads), sink_(sink), incident_(h.vertex_count()), degree_(h.vertex_count(), 0),
          chosen_(h.edge_count(), false) {
        for (std::size_t e = 0; e < h.edge_count(); ++e)
            for (VertexId v : h.edge(e).v) incident_[v].push_back(e);
    }

    void run() {
        for (std::size_t seed = 0; seed < h_.edge_count() && !stopped_; ++seed) {
            batch_.clear();
            add(seed);
            grow(seed);
            remove(seed);
            std::sort(batch_.begin(), batch_.end());
            for (const auto& s : batch_)
                if (!sink_(s)) {
                    stopped_ = true;
                    break;
                }
        }
    }

private:
    void next_component(std::size_t after) {
        if (selected_.size() == target_) {
            std::vector<std::size_t> s = selected_;
            std::sort(s.begin(), s.end());
            batch_.push_back(std::move(s));
            return;
        }
        for (std::size_t seed = after + 1; seed < h_.edge_count(); ++seed) {
            const Edge& e = h_.edge(seed);
            if (std::any_of(e.v.begin(), e.v.end(), [&](VertexId v) { return degree_[v] != 0; })) continue;
            add(seed);
            grow(seed);
            remove(seed);
        }
    }

    void grow(std::size_t seed) {
        if (open_ == 0) {
            next_component(seed);
            return;
        }
        const std::size_t remaining = target_ - selected_.size();
        if (open_ > 4 * remaining) return;

        std::vector<std::size_t> best;
        bool found = false;
        std::vector<std::size_t> cand;
        for (VertexId v : open_list()) {
            cand.clear();
            for (std::size_t e : incident_[v])
                if (usable(e, seed)) cand.push_back(e);
            if (!found || cand.size() < best.size()) {
                best = cand;
                found = true;
                if (best.empty()) return;
            }
        }
        for (std::size_t e : best) {
            add(e);
            grow(seed);
            remove(e);
        }
    }

    std::vector<VertexId> open_list() const {
        std::vector<VertexId> out;
        for (VertexId v : covered_)
            if (degree_[v] == 1) out.push_back(v);
        return out;
    }

    bool usable(std::size_t e, std::size_t seed) const {
        if (e <= seed || chosen_[e]) return false;
        const Edge& edge = h_.edge(e);
        return std::all_of(edge.v.begin(), edge.v.end(), [&](VertexId v) { return degree_[v] < 2; });
    }

    void add(std::size_t e) {
        chosen_[e] = true;
        selected_.push_back(e);
        for (VertexId v : h_.edge(e).v) {
            if (degree_[v] == 0) {
                covered_.push_back(v);
                ++open_;
            } else {
                --open_;
            }
            ++degree_[v];
        }
    }

    void remove(std::size_t e) {
        chosen_[e] = false;
        selected_.pop_back();
        const Edge& edge = h_.edge(e);
        for (auto it = edge.v.rbegin(); it != edge.v.rend(); ++it) {
            const VertexId v = *it;
            --degree_[v];
            if (degree_[v] == 0) {
                covered_.pop_back();
                --open_;
            } else {
                ++open_;
            }
        }
    }

    const Hypergraph& h_;
    std::size_t target_;
    const std::function<bool(const std::vector<std::size_t>&)>& sink_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::uint8_t> degree_;
    std::vector<bool> chosen_;
    std::vector<std::size_t> selected_;
    std::vector<VertexId> covered_;
    std::size_t open_ = 0;
    std::vector<std::vector<std::size_t>> batch_;
    bool stopped_ = false;
};

}  // namespace

void parity_subset_search(const Hypergraph& h, std::size_t tetrads,
                          const std::function<bool(const std::vector<std::size_t>&)>& sink) {
    if (tetrads % 2 == 0 || tetrads > h.edge_count())
        throw std::invalid_argument("tetrad count must be odd and at most " + std::to_string(h.edge_count()) +
                                    ", got " + std::to_string(tetrads));
    ParitySearch(h, tetrads, sink).run();
}

std::vector<Hypergraph> parity_subsets(const Hypergraph& h, std::size_t tetrads) {
    std::vector<Hypergraph> out;
    parity_subset_search(h, tetrads, [&](const std::vector<std::size_t>& edges) {
        out.push_back(h.with_edges(edges));
        return true;
    });
    return out;
}

}  // namespace ksforge

#include "ksforge/coloring.hpp"

namespace ksforge {

bool Coloring::admissible(const Hypergraph& h) const {
    if (values.size() != h.vertex_count()) return false;
    for (const Edge& e : h.edges()) {
        int ones = 0;
        for (VertexId v : e.v) {
            if (values[v] > 1) return false;
            ones += values[v];
        }
        if (ones != 1) return false;
    }
    return true;
}

namespace {

constexpr std::int8_t kUnset = -1;

class ColoringSearch {
public:
    explicit ColoringSearch(const Hypergraph& h)
        : h_(h), incident_(h.vertex_count()), value_(h.vertex_count(), kUnset),
          ones_(h.edge_count(), 0), zeros_(h.edge_count(), 0) {
        for (std::size_t e = 0; e < h.edge_count(); ++e)
            for (VertexId v : h.edge(e).v) incident_[v].push_back(e);
        for (std::size_t v = 0; v < h.vertex_count(); ++v)
            if (incident_[v].empty()) value_[v] = 0;
    }

    std::optional<Coloring> run() {
        if (!search()) return std::nullopt;
        Coloring c;
        c.values.assign(value_.begin(), value_.end());
        return c;
    }

private:
    bool search() {
        const VertexId pick = branch_vertex();
        if (pick == kNone) return true;
        for (std::int8_t val : {std::int8_t{1}, std::int8_t{0}}) {
            const std::size_t mark = trail_.size();
            if (assign(pick, val) && propagate() && search()) return true;
            undo(mark);
        }
        return false;
    }

    // Vertex in the most edges still lacking a 1; kNone when every edge has one.
    VertexId branch_vertex() const {
        VertexId best = kNone;
        std::size_t best_score = 0;
        for (VertexId v = 0; v < value_.size(); ++v) {
            if (value_[v] != kUnset) continue;
            std::size_t score = 0;
            for (std::size_t e : incident_[v]) score += ones_[e] == 0 ? 1 : 0;
            if (score > best_score) {
                best_score = score;
                best = v;
            }
        }
        return best;
    }

    bool assign(VertexId v, std::int8_t val) {
        value_[v] = val;
        trail_.push_back(v);
        bool ok = true;
        for (std::size_t e : incident_[v]) {
            if (val == 1) {
                if (++ones_[e] > 1) ok = false;
            } else if (++zeros_[e] == kEdgeSize) {
                ok = false;
            }
            pending_.push_back(e);
        }
        return ok;
    }

    bool propagate() {
        while (!pending_.empty()) {
            const std::size_t e = pending_.back();
            pending_.pop_back();
            if (ones_[e] == 1) {
                for (VertexId u : h_.edge(e).v)
                    if (value_[u] == kUnset && !assign(u, 0)) return fail();
            } else if (ones_[e] == 0 && zeros_[e] == kEdgeSize - 1) {
                for (VertexId u : h_.edge(e).v)
                    if (value_[u] == kUnset && !assign(u, 1)) return fail();
            }
        }
        return true;
    }

    bool fail() {
        pending_.clear();
        return false;
    }

    void undo(std::size_t mark) {
        pending_.clear();
        while (trail_.size() > mark) {
            const VertexId v = trail_.back();
            trail_.pop_back();
            for (std::size_t e : incident_[v]) {
                if (value_[v] == 1)
                    --ones_[e];
                else
                    --zeros_[e];
            }
            value_[v] = kUnset;
        }
    }

    static constexpr VertexId kNone = ~VertexId{0};

    const Hypergraph& h_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::int8_t> value_;
    std::vector<std::uint8_t> ones_;
    std::vector<std::uint8_t> zeros_;
    std::vector<VertexId> trail_;
    std::vector<std::size_t> pending_;
};

}  // namespace

std::optional<Coloring> find_coloring(const Hypergraph& h) {
    return ColoringSearch(h).run();
}

}  // namespace ksforge

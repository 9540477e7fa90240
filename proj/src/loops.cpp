#include "ksforge/loops.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace ksforge {

bool is_valid_loop(const Hypergraph& h, const Loop& loop) {
    const std::size_t m = loop.edges.size();
    if (m < 3 || loop.junctions.size() != m) return false;
    if (std::set<std::size_t>(loop.edges.begin(), loop.edges.end()).size() != m) return false;
    if (std::set<VertexId>(loop.junctions.begin(), loop.junctions.end()).size() != m) return false;
    for (std::size_t e : loop.edges)
        if (e >= h.edge_count()) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Edge& a = h.edge(loop.edges[i]);
            const Edge& b = h.edge(loop.edges[j]);
            const bool consecutive = j == i + 1 || (i == 0 && j == m - 1);
            if (a.shared(b) != (consecutive ? 1 : 0)) return false;
        }
    for (std::size_t i = 0; i < m; ++i) {
        const Edge& a = h.edge(loop.edges[i]);
        const Edge& b = h.edge(loop.edges[(i + 1) % m]);
        if (!a.contains(loop.junctions[i]) || !b.contains(loop.junctions[i])) return false;
    }
    return true;
}

namespace {

using Word = std::uint64_t;

class LoopSearch {
public:
    LoopSearch(const Hypergraph& h, LoopSearchOptions opts)
        : h_(h), opts_(opts), n_(h.edge_count()), words_((n_ + 63) / 64),
          touch_(n_, std::vector<Word>(words_, 0)), single_(n_, std::vector<Word>(words_, 0)),
          blocked_(n_ + 1, std::vector<Word>(words_, 0)), in_path_(words_, 0), allowed_(words_, 0) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (i == j) continue;
                const int s = h.edge(i).shared(h.edge(j));
                if (s > 0) set(touch_[i], j);
                if (s == 1) set(single_[i], j);
            }
    }

    LoopResult run() {
        for (std::size_t s = 0; s < n_ && !out_of_budget_; ++s) {
            if (n_ - s <= result_.order) break;
            std::fill(allowed_.begin(), allowed_.end(), 0);
            for (std::size_t j = s + 1; j < n_; ++j) set(allowed_, j);
            std::fill(blocked_[1].begin(), blocked_[1].end(), 0);
            path_.assign(1, s);
            set(in_path_, s);
            extend();
            clear(in_path_, s);
        }
        result_.status = out_of_budget_ ? LoopStatus::BudgetExceeded : LoopStatus::Exact;
        result_.nodes = nodes_;
        if (result_.witness && !is_valid_loop(h_, *result_.witness)) result_.witness.reset();
        return result_;
    }

private:
    void extend() {
        if (opts_.node_budget && ++nodes_ > opts_.node_budget) {
            out_of_budget_ = true;
            return;
        }
        if (!opts_.node_budget) ++nodes_;
        const std::size_t len = path_.size();
        const std::vector<Word>& blocked = blocked_[len];

        std::size_t available = 0;
        for (std::size_t w = 0; w < words_; ++w)
            available += static_cast<std::size_t>(std::popcount(allowed_[w] & ~blocked[w] & ~in_path_[w]));
        if (len + available <= result_.order) return;

        const std::size_t first = path_.front();
        const std::size_t last = path_.back();
        for (std::size_t w = 0; w < words_; ++w) {
            Word cand = single_[last][w] & allowed_[w] & ~blocked[w] & ~in_path_[w];
            while (cand && !out_of_budget_) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(cand));
                cand &= cand - 1;
                if (len >= 2 && test(touch_[first], c)) {
                    if (test(single_[first], c) && c > path_[1]) close(c);
                    continue;
                }
                std::vector<Word>& next = blocked_[len + 1];
                if (len >= 2) {
                    for (std::size_t k = 0; k < words_; ++k) next[k] = blocked[k] | touch_[last][k];
                } else {
                    next = blocked;
                }
                path_.push_back(c);
                set(in_path_, c);
                extend();
                clear(in_path_, c);
                path_.pop_back();
            }
        }
    }

    void close(std::size_t c) {
        const std::size_t m = path_.size() + 1;
        if (m <= result_.order) return;
        Loop loop;
        loop.edges = path_;
        loop.edges.push_back(c);
        for (std::size_t i = 0; i < m; ++i) loop.junctions.push_back(junction(loop.edges[i], loop.edges[(i + 1) % m]));
        // Triangles can have all three edges through one vertex.
        if (m == 3 && std::set<VertexId>(loop.junctions.begin(), loop.junctions.end()).size() != 3) return;
        result_.order = m;
        result_.witness = std::move(loop);
    }

    VertexId junction(std::size_t a, std::size_t b) const {
        for (VertexId v : h_.edge(a).v)
            if (h_.edge(b).contains(v)) return v;
        return 0;
    }

    static void set(std::vector<Word>& bits, std::size_t i) { bits[i / 64] |= Word{1} << (i % 64); }
    static void clear(std::vector<Word>& bits, std::size_t i) { bits[i / 64] &= ~(Word{1} << (i % 64)); }
    static bool test(const std::vector<Word>& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1; }

    const Hypergraph& h_;
    LoopSearchOptions opts_;
    std::size_t n_;
    std::size_t words_;
    std::vector<std::vector<Word>> touch_;   // share >= 1 vertex
    std::vector<std::vector<Word>> single_;  // share exactly 1 vertex
    std::vector<std::vector<Word>> blocked_; // per depth: edges touching interior path edges
    std::vector<Word> in_path_;
    std::vector<Word> allowed_;
    std::vector<std::size_t> path_;
    LoopResult result_;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
};

}  // namespace

LoopResult find_max_loop(const Hypergraph& h, LoopSearchOptions opts) {
    return LoopSearch(h, opts).run();
}

}  // namespace ksforge

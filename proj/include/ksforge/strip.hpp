#pragma once

// Edge stripping: every way of removing k edges from a hypergraph, visited in
// lexicographic order of the removed-index k-combination. Ranks are 1-based
// and any rank can be unranked directly, so rank ranges can be handed to
// independent workers.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ksforge/mmp.hpp"

namespace ksforge {

/// Wide enough for C(B, k) with B up to 128.
using Count = unsigned __int128;

[[nodiscard]] std::string to_string(Count c);
/// Decimal only; throws std::invalid_argument on junk or overflow.
[[nodiscard]] Count parse_count(std::string_view text);

/// C(n, k); throws std::overflow_error if the result does not fit.
[[nodiscard]] Count binomial(std::size_t n, std::size_t k);

/// Rank (1-based) of an ascending k-combination of {0..n-1}.
[[nodiscard]] Count rank_combination(std::size_t n, const std::vector<std::size_t>& combo);
/// Inverse of rank_combination.
[[nodiscard]] std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, Count rank);

struct StripPlan {
    std::size_t k = 1;
    Count start = 1;
    Count end = 0;  // 0 = through the last rank
    Count increment = 1;
    bool drop_disconnected = false;
    bool renormalize_output = true;
};

struct Strip {
    Count rank = 0;
    std::vector<std::size_t> removed;
    Hypergraph graph;
};

[[nodiscard]] Count count_strips(const Hypergraph& h, std::size_t k);

/// Throws std::invalid_argument if the plan does not fit h.
void validate_plan(const Hypergraph& h, const StripPlan& plan);

/// Visits ranks start, start+i, start+2i, ... <= end. The callback returns
/// false to stop early.
void enumerate_strips(const Hypergraph& h, const StripPlan& plan, const std::function<bool(const Strip&)>& sink);

[[nodiscard]] std::vector<Hypergraph> collect_strips(const Hypergraph& h, const StripPlan& plan);

/// First-occurrence filter on equal edge sets after renormalization.
class ExactDeduper {
public:
    /// True if h was not seen before.
    bool insert(const Hypergraph& h);
    [[nodiscard]] std::size_t size() const { return seen_.size(); }

private:
    std::unordered_set<std::vector<Edge>, ExactKeyHash> seen_;
};

[[nodiscard]] std::vector<Hypergraph> dedupe_exact(const std::vector<Hypergraph>& stream);

}  // namespace ksforge

#include <doctest.h>

#include "ksforge/strip.hpp"
#include "support.hpp"

using namespace ksforge;
using testsupport::graph;

namespace {

// All k-combinations of {0..n-1} in lexicographic order, built recursively.
void combinations(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::string> texts(const std::vector<Hypergraph>& v) {
    std::vector<std::string> out;
    for (const auto& h : v) out.push_back(serialize_mmp(h));
    return out;
}

}  // namespace

TEST_CASE("binomials and 128-bit counts") {
    CHECK(binomial(75, 1) == 75);
    CHECK(binomial(75, 2) == 2775);
    CHECK(binomial(13, 13) == 1);
    CHECK(binomial(13, 0) == 1);
    CHECK(binomial(5, 7) == 0);
    CHECK(to_string(binomial(75, 56)) == "286845713747883300");
    CHECK(to_string(binomial(100, 50)) == "100891344545564193334812497256");
    CHECK(parse_count("2775") == 2775);
    CHECK(to_string(parse_count("100891344545564193334812497256")) == "100891344545564193334812497256");
    CHECK_THROWS_AS((void)parse_count("12x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_count(""), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_count("999999999999999999999999999999999999999999"), std::invalid_argument);
    CHECK_THROWS_AS((void)binomial(200, 100), std::overflow_error);
}

TEST_CASE("count_strips") {
    CHECK(count_strips(graph("60-75"), 1) == 75);
    CHECK(count_strips(graph("60-75"), 2) == 2775);
    CHECK(count_strips(graph("26-13"), 13) == 1);
    CHECK_THROWS_AS((void)count_strips(graph("26-13"), 14), std::invalid_argument);
}

TEST_CASE("rank and unrank round-trip exhaustively up to 20 elements") {
    for (std::size_t n = 1; n <= 20; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            if (binomial(n, k) > 200000) continue;
            std::vector<std::vector<std::size_t>> all;
            std::vector<std::size_t> cur;
            combinations(n, k, 0, cur, all);
            REQUIRE(Count(all.size()) == binomial(n, k));
            for (std::size_t r = 0; r < all.size(); ++r) {
                if (unrank_combination(n, k, r + 1) != all[r] || rank_combination(n, all[r]) != r + 1) {
                    FAIL("n=" << n << " k=" << k << " rank=" << r + 1);
                }
            }
        }
}

TEST_CASE("rank and unrank round-trip on the largest middle layers by sampling") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {18, 19, 20, 75, 120}) {
        const std::size_t k = n / 2;
        const Count total = binomial(n, k);
        for (int i = 0; i < 2000; ++i) {
            const Count r = 1 + (Count(rng()) << 64 | rng()) % total;
            CHECK(rank_combination(n, unrank_combination(n, k, r)) == r);
        }
        CHECK(unrank_combination(n, k, 1).front() == 0);
        CHECK(unrank_combination(n, k, total).back() == n - 1);
    }
}

TEST_CASE("rank errors") {
    CHECK_THROWS_AS((void)unrank_combination(5, 2, 0), std::out_of_range);
    CHECK_THROWS_AS((void)unrank_combination(5, 2, 11), std::out_of_range);
    CHECK_THROWS_AS((void)rank_combination(5, {3, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)rank_combination(5, {1, 5}), std::invalid_argument);
}

TEST_CASE("one-edge strips of the 13-block set") {
    const auto strips = collect_strips(graph("26-13"), {.k = 1});
    CHECK(strips.size() == 13);
    for (const auto& s : strips) CHECK(s.edge_count() == 12);
}

TEST_CASE("no single removal disconnects the 60-ray set") {
    const auto strips = collect_strips(graph("60-75"), {.k = 1, .drop_disconnected = true});
    CHECK(strips.size() == 75);
}

TEST_CASE("enumeration order, ranks and removed sets agree") {
    const Hypergraph h = graph("30-15a");
    std::vector<Strip> seen;
    enumerate_strips(h, {.k = 3, .renormalize_output = false}, [&](const Strip& s) {
        seen.push_back(s);
        return true;
    });
    REQUIRE(Count(seen.size()) == binomial(15, 3));
    for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(seen[i].rank == i + 1);
        CHECK(seen[i].removed == unrank_combination(15, 3, i + 1));
        CHECK(seen[i].graph.same_as(h.without_edges(seen[i].removed)));
    }
}

TEST_CASE("disjoint rank ranges partition the full enumeration") {
    const Hypergraph h = graph("32-17");
    const auto full = texts(collect_strips(h, {.k = 2}));
    std::vector<std::string> joined;
    for (Count start = 1; start <= 136; start += 25) {
        const Count end = std::min<Count>(start + 24, 136);
        const auto part = texts(collect_strips(h, {.k = 2, .start = start, .end = end}));
        joined.insert(joined.end(), part.begin(), part.end());
    }
    CHECK(joined == full);
}

TEST_CASE("increment keeps ranks congruent to the start") {
    const Hypergraph h = graph("32-17");
    std::vector<Count> ranks;
    enumerate_strips(h, {.k = 2, .start = 4, .end = 100, .increment = 7}, [&](const Strip& s) {
        ranks.push_back(s.rank);
        return true;
    });
    REQUIRE(!ranks.empty());
    CHECK(ranks.front() == 4);
    for (std::size_t i = 1; i < ranks.size(); ++i) CHECK(ranks[i] - ranks[i - 1] == 7);
    CHECK(ranks.back() <= 100);
    CHECK(ranks.back() + 7 > 100);

    // Large increments go through direct unranking.
    std::vector<Count> wide;
    enumerate_strips(graph("60-75"), {.k = 56, .increment = parse_count("28684571374788330")}, [&](const Strip& s) {
        wide.push_back(s.rank);
        CHECK(s.graph.edge_count() == 19);
        return true;
    });
    CHECK(wide.size() == 10);
}

TEST_CASE("invalid plans") {
    const Hypergraph h = graph("26-13");
    CHECK_THROWS_AS(validate_plan(h, {.k = 14}), std::invalid_argument);
    CHECK_THROWS_AS(validate_plan(h, {.k = 1, .start = 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_plan(h, {.k = 1, .start = 5, .end = 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate_plan(h, {.k = 1, .end = 14}), std::invalid_argument);
    CHECK_THROWS_AS(validate_plan(h, {.k = 1, .increment = 0}), std::invalid_argument);
    CHECK_NOTHROW(validate_plan(h, {.k = 13}));
}

TEST_CASE("the sink can stop the enumeration") {
    std::size_t n = 0;
    enumerate_strips(graph("26-13"), {.k = 2}, [&](const Strip&) { return ++n < 5; });
    CHECK(n == 5);
}

TEST_CASE("exact dedupe keeps first occurrences") {
    const Hypergraph a = parse_mmp("1234,4567.").graph;
    const Hypergraph b = parse_mmp("1234,4576.").graph;
    const Hypergraph c = parse_mmp("1234,5678.").graph;
    const auto out = dedupe_exact({a, a, c, b});
    REQUIRE(out.size() == 2);
    CHECK(out[0].same_as(a));
    CHECK(out[1].same_as(c));
    // Same shape, different edge sets after renormalization: not a duplicate.
    CHECK(dedupe_exact({a, parse_mmp("4567,1234.").graph}).size() == 2);
}

TEST_CASE("removing i then j equals removing j then i") {
    const Hypergraph h = graph("26-13");
    std::vector<Hypergraph> two_pass;
    for (const Hypergraph& g : collect_strips(h, {.k = 1, .renormalize_output = false}))
        for (const Hypergraph& f : collect_strips(g, {.k = 1, .renormalize_output = false})) two_pass.push_back(f);
    CHECK(two_pass.size() == 13 * 12);
    CHECK(dedupe_exact(two_pass).size() == 78);
}

TEST_CASE("two passes of single removals from the 60-ray set give C(75,2) distinct sets") {
    const Hypergraph h = graph("60-75");
    ExactDeduper d;
    std::size_t total = 0;
    for (const Hypergraph& g : collect_strips(h, {.k = 1, .renormalize_output = false}))
        enumerate_strips(g, {.k = 1, .renormalize_output = false}, [&](const Strip& s) {
            ++total;
            d.insert(s.graph);
            return true;
        });
    CHECK(total == 75 * 74);
    CHECK(d.size() == 2775);
}

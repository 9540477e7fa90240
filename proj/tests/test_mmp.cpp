#include <doctest.h>

#include <sstream>

#include "ksforge/mmp.hpp"
#include "support.hpp"

using namespace ksforge;
using testsupport::edge;
using testsupport::graph;

static MmpError::Kind parse_error_kind(const std::string& text) {
    try {
        (void)parse_mmp(text);
    } catch (const MmpError& e) {
        return e.kind();
    }
    FAIL("expected a parse error for " << text);
    return MmpError::Kind::Empty;
}

TEST_CASE("labels map 1-9, A-Z, a-z to values 1..61") {
    CHECK(label_value('1') == 1);
    CHECK(label_value('9') == 9);
    CHECK(label_value('A') == 10);
    CHECK(label_value('Z') == 35);
    CHECK(label_value('a') == 36);
    CHECK(label_value('y') == 60);
    CHECK(label_value('z') == 61);
    CHECK(label_value('0') < 0);
    CHECK(label_value('#') < 0);
    for (VertexId v = 0; v < kMaxTextVertices; ++v) CHECK(label_value(label_char(v)) == static_cast<int>(v) + 1);
    CHECK_THROWS_AS((void)label_char(61), MmpError);
}

TEST_CASE("single edge parses to four vertices") {
    const auto r = parse_mmp("1234.");
    CHECK_FALSE(r.missing_period);
    CHECK(r.graph.vertex_count() == 4);
    REQUIRE(r.graph.edge_count() == 1);
    CHECK(r.graph.edge(0) == edge(0, 1, 2, 3));
    CHECK(serialize_mmp(r.graph) == "1234.");
}

TEST_CASE("whitespace and line breaks are ignored, missing period is flagged") {
    const auto r = parse_mmp(" 1234,\n  4567 ");
    CHECK(r.missing_period);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.vertex_count() == 7);
}

TEST_CASE("malformed text is rejected with a specific kind") {
    CHECK(parse_error_kind("12#4.") == MmpError::Kind::BadCharacter);
    CHECK(parse_error_kind("1230.") == MmpError::Kind::BadCharacter);
    CHECK(parse_error_kind("123.") == MmpError::Kind::EdgeSize);
    CHECK(parse_error_kind("12345.") == MmpError::Kind::EdgeSize);
    CHECK(parse_error_kind("1234,,5678.") == MmpError::Kind::EdgeSize);
    CHECK(parse_error_kind("1214.") == MmpError::Kind::RepeatedVertex);
    CHECK(parse_error_kind("1234,4321.") == MmpError::Kind::DuplicateEdge);
    CHECK(parse_error_kind("1234,1235.") == MmpError::Kind::Overlap);
    CHECK(parse_error_kind("") == MmpError::Kind::Empty);
    CHECK(parse_error_kind("  .") == MmpError::Kind::Empty);
    CHECK_NOTHROW((void)parse_mmp("1234,1235.", {.check_overlap = false}));
}

TEST_CASE("hypergraph constructor validates ranges") {
    CHECK_THROWS_AS(Hypergraph(3, {edge(0, 1, 2, 3)}), MmpError);
    CHECK_THROWS_AS(Hypergraph(4, {edge(0, 1, 1, 3)}), MmpError);
    CHECK_NOTHROW(Hypergraph(8, {edge(0, 1, 2, 3)}));
}

TEST_CASE("serialization needs labels for every vertex") {
    std::vector<Edge> edges;
    for (VertexId i = 0; i + 3 < 64; i += 3) edges.push_back(edge(i, i + 1, i + 2, i + 3));
    const Hypergraph big(64, edges);
    CHECK_THROWS_AS((void)serialize_mmp(big), MmpError);
    const Hypergraph ok(61, {edge(57, 58, 59, 60)});
    CHECK(serialize_mmp(ok) == "wxyz.");
}

TEST_CASE("corpus strings round-trip bit-exactly") {
    for (const auto& e : testsupport::corpus()) {
        CAPTURE(e.name);
        const Hypergraph h = parse_mmp(e.mmp).graph;
        CHECK(serialize_mmp(h) == e.mmp);
        CHECK(parse_mmp(serialize_mmp(h)).graph.same_as(h));
        const Hypergraph r = renormalize(h);
        CHECK(r.vertex_count() == h.vertex_count());
        CHECK(renormalize(r).same_as(r));
        CHECK(h.vertex_count() == e.vertices);
        CHECK(h.edge_count() == e.blocks);
    }
}

TEST_CASE("degrees of the 2-regular, 5-regular and mixed sets") {
    const auto d13 = graph("26-13").degrees();
    CHECK(std::all_of(d13.begin(), d13.end(), [](std::size_t d) { return d == 2; }));
    const auto d75 = graph("60-75").degrees();
    CHECK(d75.size() == 60);
    CHECK(std::all_of(d75.begin(), d75.end(), [](std::size_t d) { return d == 5; }));
    const auto d24 = graph("42-24").degrees();
    CHECK(d24[static_cast<std::size_t>(label_value('2') - 1)] % 2 == 1);
    for (const auto& e : testsupport::corpus()) {
        const auto d = parse_mmp(e.mmp).graph.degrees();
        CHECK(std::accumulate(d.begin(), d.end(), std::size_t{0}) == 4 * e.blocks);
    }
}

TEST_CASE("renormalize closes gaps in first-appearance order") {
    const Hypergraph h(9, {edge(5, 6, 7, 8)});
    const Hypergraph r = renormalize(h);
    CHECK(r.vertex_count() == 4);
    CHECK(r.edge(0) == edge(0, 1, 2, 3));
    CHECK(renormalize(r).same_as(r));

    const Hypergraph mixed(8, {edge(7, 2, 5, 0), edge(0, 1, 3, 4)});
    const Hypergraph m = renormalize(mixed);
    CHECK(m.edge(0) == edge(0, 1, 2, 3));
    CHECK(m.edge(1) == edge(3, 4, 5, 6));
}

TEST_CASE("removing one edge from the 60-ray set keeps every vertex") {
    const Hypergraph h = graph("60-75");
    const Hypergraph stripped = renormalize(h.without_edges({9}));
    CHECK(stripped.vertex_count() == 60);
    CHECK(stripped.edge_count() == 74);
}

TEST_CASE("connectivity") {
    CHECK(Hypergraph(4, {edge(0, 1, 2, 3)}).is_connected());
    CHECK_FALSE(Hypergraph(8, {edge(0, 1, 2, 3), edge(4, 5, 6, 7)}).is_connected());
    CHECK(Hypergraph(7, {edge(0, 1, 2, 3), edge(3, 4, 5, 6)}).is_connected());
    CHECK(graph("60-75").is_connected());
    for (const auto& e : testsupport::corpus()) CHECK(parse_mmp(e.mmp).graph.is_connected());
}

TEST_CASE("edge subsets keep order") {
    const Hypergraph h = graph("26-13");
    const Hypergraph w = h.with_edges({2, 0});
    CHECK(w.edge(0) == h.edge(2));
    CHECK(w.edge(1) == h.edge(0));
    const Hypergraph wo = h.without_edges({0, 12});
    CHECK(wo.edge_count() == 11);
    CHECK(wo.edge(0) == h.edge(1));
}

TEST_CASE("file reader skips comments and blank lines") {
    std::istringstream in("# header\n\n1234.\n  \n# more\n1234,4567.\n");
    const auto lines = read_mmp_lines(in);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].line_number == 3);
    CHECK(lines[1].text == "1234,4567.");
}

TEST_CASE("random hypergraphs round-trip through text") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Hypergraph h = testsupport::random_hypergraph(rng, 4 + i % 40, 1 + i % 12);
        CHECK(parse_mmp(serialize_mmp(h)).graph.same_as(h));
        const Hypergraph r = renormalize(h);
        CHECK(r.vertex_count() == h.vertex_count());
        CHECK(renormalize(r).same_as(r));
    }
}

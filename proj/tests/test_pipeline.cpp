#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "ksforge/coloring.hpp"
#include "ksforge/iso.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/pipeline.hpp"
#include "support.hpp"

using namespace ksforge;
using testsupport::graph;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / ("ksforge-test-" + name + "-" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::vector<std::string> lines(const CensusResult& r) {
    std::vector<std::string> out;
    for (const auto& rec : r.records) out.push_back(format_record(rec));
    return out;
}

CensusConfig small_config() {
    CensusConfig c;
    c.target_blocks = 66;
    c.population_cap = 12;
    c.seed = 5;
    c.critical_max_blocks = 0;
    c.loop_max_blocks = 0;
    return c;
}

}  // namespace

TEST_CASE("criticality") {
    for (const auto& e : testsupport::corpus()) {
        CAPTURE(e.name);
        CHECK(is_critical(parse_mmp(e.mmp).graph) == e.critical);
    }
    CHECK_FALSE(is_critical(parse_mmp("1234.").graph));
}

TEST_CASE("criticality agrees with brute force on small instances") {
    for (const Hypergraph& h : testsupport::small_bank(41, 6)) CHECK(is_critical(h) == testsupport::brute_critical(h));
    CHECK(is_critical(parse_mmp("1234,1256,3456.").graph));
}

TEST_CASE("census from a critical set finds nothing one block lower") {
    CensusConfig c;
    c.target_blocks = 14;
    const CensusResult r = census(graph("30-15a"), c);
    CHECK(r.complete);
    REQUIRE(r.levels.size() == 1);
    CHECK(r.levels[0].generated == 15);
    CHECK(r.levels[0].noncolorable == 0);
    CHECK(r.records.empty());
}

TEST_CASE("census records are canonical, sorted, non-colorable and distinct") {
    CensusConfig c = small_config();
    c.target_blocks = 70;
    const CensusResult r = census(graph("60-75"), c);
    REQUIRE(r.complete);
    REQUIRE(r.levels.size() == 5);
    CHECK(r.levels[0].generated == 75);
    CHECK(r.levels[0].nonisomorphic == 1);
    REQUIRE(!r.records.empty());
    IsoDeduper seen;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const CensusRecord& rec = r.records[i];
        const Hypergraph h = parse_mmp(rec.canonical_mmp).graph;
        CHECK(serialize_mmp(canonical_hypergraph(h)) == rec.canonical_mmp);
        CHECK(h.edge_count() == 70);
        CHECK(rec.blocks == 70);
        CHECK(rec.vertices == h.vertex_count());
        CHECK(is_noncolorable(h));
        CHECK(seen.insert(h));
        if (i) CHECK(canonical_form(parse_mmp(r.records[i - 1].canonical_mmp).graph) < canonical_form(h));
    }
    // The target level is not capped.
    CHECK(r.records.size() == r.levels.back().nonisomorphic);
    CHECK(r.levels.back().kept == r.records.size());
}

TEST_CASE("stage order does not change the records") {
    CensusConfig c = small_config();
    const auto a = census(graph("60-75"), c);
    c.filter_before_iso = false;
    const auto b = census(graph("60-75"), c);
    CHECK(lines(a) == lines(b));
    for (std::size_t i = 0; i < a.levels.size(); ++i) CHECK(a.levels[i].kept == b.levels[i].kept);
}

TEST_CASE("worker count does not change the records") {
    CensusConfig c = small_config();
    const auto a = census(graph("60-75"), c);
    c.jobs = 4;
    const auto b = census(graph("60-75"), c);
    CHECK(lines(a) == lines(b));
}

TEST_CASE("census is deterministic") {
    CensusConfig c = small_config();
    const auto a = census(graph("60-75"), c);
    const auto a2 = census(graph("60-75"), c);
    CHECK(lines(a) == lines(a2));
}

TEST_CASE("interrupted and resumed census equals an uninterrupted one") {
    TempDir dir("resume");
    CensusConfig c = small_config();
    const auto full = census(graph("60-75"), c);

    c.state_dir = dir.path;
    c.max_levels = 3;
    const auto first = census(graph("60-75"), c);
    CHECK_FALSE(first.complete);
    CHECK(first.levels.size() == 3);
    CHECK(std::filesystem::exists(dir.path / "state"));
    CHECK(std::filesystem::exists(dir.path / "level-72.mmp"));

    c.resume = true;
    c.max_levels = 2;
    const auto second = census(graph("60-75"), c);
    CHECK_FALSE(second.complete);
    CHECK(second.levels.size() == 5);

    c.max_levels = 0;
    const auto rest = census(graph("60-75"), c);
    CHECK(rest.complete);
    CHECK(lines(rest) == lines(full));
    REQUIRE(rest.levels.size() == full.levels.size());
    for (std::size_t i = 0; i < full.levels.size(); ++i) {
        CHECK(rest.levels[i].blocks == full.levels[i].blocks);
        CHECK(rest.levels[i].generated == full.levels[i].generated);
        CHECK(rest.levels[i].kept == full.levels[i].kept);
    }
    std::ifstream tsv(dir.path / "records.tsv");
    std::string header;
    std::getline(tsv, header);
    CHECK(header == record_header());
    std::size_t n = 0;
    for (std::string line; std::getline(tsv, line);) ++n;
    CHECK(n == full.records.size());

    // Resuming a finished run recomputes nothing and returns the same records.
    const auto again = census(graph("60-75"), c);
    CHECK(lines(again) == lines(full));
}

TEST_CASE("resume refuses a state directory from another configuration") {
    TempDir dir("mismatch");
    CensusConfig c = small_config();
    c.state_dir = dir.path;
    c.max_levels = 1;
    (void)census(graph("60-75"), c);
    c.seed = 6;
    c.resume = true;
    CHECK_THROWS_AS((void)census(graph("60-75"), c), CensusError);
}

TEST_CASE("resume without saved state starts fresh") {
    TempDir dir("fresh");
    CensusConfig c = small_config();
    c.target_blocks = 72;
    c.state_dir = dir.path;
    c.resume = true;
    const auto r = census(graph("60-75"), c);
    CHECK(r.complete);
    CHECK(r.levels.size() == 3);
}

TEST_CASE("census configuration errors") {
    CensusConfig c;
    c.target_blocks = 75;
    CHECK_THROWS_AS((void)census(graph("60-75"), c), std::invalid_argument);
    c.target_blocks = 10;
    c.plan.k = 0;
    CHECK_THROWS_AS((void)census(graph("60-75"), c), std::invalid_argument);
}

TEST_CASE("removing several edges per level, properties of small records") {
    CensusConfig c;
    c.target_blocks = 13;
    c.plan.k = 2;
    c.critical_max_blocks = 25;
    const auto r = census(graph("30-15a"), c);
    CHECK(r.records.empty());

    // A 26-13 padded with two extra edges of the 60-ray set strips back to it.
    const Hypergraph big = graph("60-75");
    std::vector<std::size_t> s;
    parity_subset_search(big, 13, [&](const std::vector<std::size_t>& sol) {
        s = sol;
        return false;
    });
    REQUIRE(s.size() == 13);
    std::vector<std::size_t> padded = s;
    for (std::size_t e = 0; padded.size() < 15; ++e)
        if (std::find(s.begin(), s.end(), e) == s.end()) padded.push_back(e);
    std::sort(padded.begin(), padded.end());
    CensusConfig pc;
    pc.target_blocks = 13;
    pc.critical_max_blocks = 25;
    pc.loop_max_blocks = 30;
    pc.plan.drop_disconnected = false;
    const auto pr = census(renormalize(big.with_edges(padded)), pc);
    REQUIRE(pr.records.size() == 1);
    const CensusRecord& rec = pr.records[0];
    CHECK(rec.vertices == 26);
    CHECK(rec.critical == std::optional<bool>(true));
    CHECK(rec.parity);
    CHECK(rec.max_loop == std::optional<std::size_t>(8));
    CHECK(are_isomorphic(parse_mmp(rec.canonical_mmp).graph, graph("26-13")));
    const std::string line = format_record(rec);
    CHECK(line.starts_with(rec.canonical_mmp + "\t26\t13\t8\tyes\tyes\t"));
}

TEST_CASE("corpus loader and verifier") {
    const auto report = verify_corpus(testsupport::corpus());
    CHECK(report.distinct_classes == testsupport::corpus().size());
    std::size_t failures = 0;
    for (const auto& check : report.checks)
        if (!check.passed) {
            ++failures;
            MESSAGE("corpus check failed: " << check.name << " " << check.property << " = " << check.detail);
        }
    // Everything except the quoted 24-block loop order is reproduced.
    for (const auto& check : report.checks)
        if (!(check.name == "42-24" && check.property == "max_loop")) CHECK(check.passed);
    CHECK(failures <= 1);
}

TEST_CASE("mutated corpus entries are flagged") {
    std::vector<CorpusEntry> entries{testsupport::entry("26-13")};
    entries[0].mmp[5] = '!';
    auto report = verify_corpus(entries);
    CHECK_FALSE(report.all_passed());
    CHECK(report.checks[0].property == "parse");

    entries = {testsupport::entry("30-15b")};
    entries[0].mmp[0] = 'z';
    report = verify_corpus(entries);
    CHECK_FALSE(report.all_passed());

    entries = {testsupport::entry("30-15a"), testsupport::entry("30-15b"), testsupport::entry("30-15c")};
    CHECK(verify_corpus(entries).distinct_classes == 3);
    entries.push_back(testsupport::entry("30-15b"));
    CHECK(verify_corpus(entries).distinct_classes == 3);
}

TEST_CASE("corpus file errors") {
    TempDir dir("corpus");
    std::filesystem::create_directories(dir.path);
    CHECK_THROWS_AS((void)load_corpus(dir.path / "missing.tsv"), CensusError);
    {
        std::ofstream(dir.path / "bad.tsv") << "x\t1234.\t4\t1\tyes\n";
    }
    CHECK_THROWS_AS((void)load_corpus(dir.path / "bad.tsv"), CensusError);
    {
        std::ofstream(dir.path / "flag.tsv") << "x\t1234.\t4\t1\tmaybe\tno\t-\tno\n";
    }
    CHECK_THROWS_AS((void)load_corpus(dir.path / "flag.tsv"), CensusError);
    {
        std::ofstream(dir.path / "ok.tsv") << "# c\nx\t1234.\t4\t1\tno\tno\t-\tno\n";
    }
    const auto ok = load_corpus(dir.path / "ok.tsv");
    REQUIRE(ok.size() == 1);
    CHECK_FALSE(ok[0].max_loop);
}

TEST_CASE("greedy descents end in critical cores") {
    const CoreSampleResult r = sample_critical_cores(graph("60-75"), {.samples = 40, .seed = 3});
    REQUIRE(!r.records.empty());
    REQUIRE(r.hits.size() == r.records.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const Hypergraph h = parse_mmp(r.records[i].canonical_mmp).graph;
        CHECK(r.records[i].critical == std::optional<bool>(true));
        CHECK(is_critical(h));
        CHECK(serialize_mmp(canonical_hypergraph(h)) == r.records[i].canonical_mmp);
        CHECK(r.hits[i] >= 1);
        if (i) CHECK(r.records[i - 1].blocks <= r.records[i].blocks);
        total += r.hits[i];
    }
    CHECK(total == 40);

    auto again = sample_critical_cores(graph("60-75"), {.samples = 40, .seed = 3, .jobs = 3});
    REQUIRE(again.records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(format_record(again.records[i]) == format_record(r.records[i]));
    CHECK(again.hits == r.hits);

    CHECK_THROWS_AS((void)sample_critical_cores(parse_mmp("1234,4567.").graph, {}), std::invalid_argument);
}

TEST_CASE("cores of small non-colorable instances are critical by brute force") {
    std::size_t seen = 0;
    for (const Hypergraph& h : testsupport::small_bank(77, 3)) {
        if (testsupport::brute_colorable(h)) continue;
        ++seen;
        for (const auto& rec : sample_critical_cores(h, {.samples = 4, .seed = seen}).records)
            CHECK(testsupport::brute_critical(parse_mmp(rec.canonical_mmp).graph));
    }
    CHECK(seen > 0);
}

TEST_CASE("a critical set is its own only core") {
    const auto r = sample_critical_cores(graph("30-15b"), {.samples = 5, .seed = 9});
    REQUIRE(r.records.size() == 1);
    CHECK(r.hits[0] == 5);
    CHECK(are_isomorphic(parse_mmp(r.records[0].canonical_mmp).graph, graph("30-15b")));
}

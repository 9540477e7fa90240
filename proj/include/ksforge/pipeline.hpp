#pragma once

// Stripping census: starting from one KS hypergraph, repeatedly strip edges
// and keep only non-colorable, pairwise non-isomorphic survivors until the
// target block count is reached.
//
// Each level: strip k edges from every member of the population (sampled by
// the plan's rank range and increment), drop exact duplicates, drop
// colorable hypergraphs, drop isomorphic copies, then optionally subsample
// the survivors to a population cap with a seeded generator. All survivors
// at the target level become census records.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ksforge/loops.hpp"
#include "ksforge/mmp.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/strip.hpp"

namespace ksforge {

/// Non-colorable, and removing any single edge makes it colorable.
[[nodiscard]] bool is_critical(const Hypergraph& h);

struct CensusConfig {
    std::size_t target_blocks = 0;
    /// plan.k is the number of edges removed per level (the last level may
    /// remove fewer); start/end/increment apply to each parent.
    StripPlan plan{.k = 1, .drop_disconnected = true};
    /// Survivors carried to the next level; 0 keeps all. The target level
    /// is never capped.
    std::size_t population_cap = 0;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    /// Criticality is only decided for records with at most this many blocks.
    std::size_t critical_max_blocks = 25;
    /// Loop orders are only computed for records with at most this many blocks.
    std::size_t loop_max_blocks = 30;
    /// Colorability filter before isomorphism rejection (the default), or after.
    bool filter_before_iso = true;
    /// Persist each finished level here; empty disables persistence.
    std::filesystem::path state_dir;
    /// Continue from the last level recorded in state_dir.
    bool resume = false;
    /// Stop after this many newly computed levels (0 = run to the target).
    /// A stopped run can be resumed from state_dir.
    std::size_t max_levels = 0;
};

struct LevelReport {
    std::size_t blocks = 0;
    std::size_t generated = 0;
    std::size_t distinct = 0;
    std::size_t noncolorable = 0;
    std::size_t nonisomorphic = 0;
    std::size_t kept = 0;
};

struct CensusRecord {
    std::string canonical_mmp;
    std::size_t vertices = 0;
    std::size_t blocks = 0;
    std::optional<std::size_t> max_loop;  // unset above loop_max_blocks
    bool parity = false;
    std::optional<bool> critical;  // unset above critical_max_blocks
    std::size_t source_parent = 0;  // index into the previous level's population
    Count source_rank = 0;
    std::uint64_t seed = 0;
};

struct CensusResult {
    std::vector<LevelReport> levels;
    std::vector<CensusRecord> records;  // ordered by canonical form
    bool complete = false;              // false when stopped by max_levels
};

class CensusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument for a bad configuration and CensusError for
/// persistence failures.
[[nodiscard]] CensusResult census(const Hypergraph& start, const CensusConfig& config,
                                  const std::function<void(const LevelReport&)>& progress = {});

/// Random greedy descent: visit the edges in a seeded random order and drop
/// each one whose removal keeps the hypergraph non-colorable. Every descent
/// ends in a critical subset (a core).
struct CoreSampleConfig {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    /// Loop orders are only computed for cores with at most this many blocks.
    std::size_t loop_max_blocks = 30;
};

struct CoreSampleResult {
    /// One record per isomorphism class, ordered by block count, then by
    /// canonical form. source_parent is the first descent reaching the class.
    std::vector<CensusRecord> records;
    std::vector<std::size_t> hits;  // descents ending in records[i]
};

/// Throws std::invalid_argument if start is colorable. Descent i depends
/// only on (seed, i), so the result does not depend on jobs.
[[nodiscard]] CoreSampleResult sample_critical_cores(const Hypergraph& start, const CoreSampleConfig& config);

/// Tab-separated: mmp, vertices, blocks, max_loop, parity, critical,
/// source_parent, source_rank, seed. Unknown values are "-".
[[nodiscard]] std::string format_record(const CensusRecord& r);
[[nodiscard]] std::string record_header();

// Golden corpus: named hypergraphs with their expected properties.

struct CorpusEntry {
    std::string name;
    std::string mmp;
    std::size_t vertices = 0;
    std::size_t blocks = 0;
    bool noncolorable = false;
    bool critical = false;
    std::optional<std::size_t> max_loop;
    bool parity = false;
};

/// Reads the tab-separated corpus file; throws CensusError if it is missing
/// or malformed.
[[nodiscard]] std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);

struct CorpusCheck {
    std::string name;
    std::string property;
    bool passed = false;
    std::string detail;
};

struct CorpusReport {
    std::vector<CorpusCheck> checks;
    std::size_t distinct_classes = 0;

    [[nodiscard]] bool all_passed() const;
};

[[nodiscard]] CorpusReport verify_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace ksforge

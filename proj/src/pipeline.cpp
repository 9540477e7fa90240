#include "ksforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "ksforge/coloring.hpp"
#include "ksforge/iso.hpp"

namespace ksforge {

bool is_critical(const Hypergraph& h) {
    if (!is_noncolorable(h)) return false;
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        if (is_noncolorable(h.without_edges({e}))) return false;
    return true;
}

namespace {

template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& body) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < std::min(jobs, n); ++t)
        workers.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

struct Member {
    Hypergraph graph;
    std::size_t parent = 0;
    Count rank = 0;
};

Hypergraph from_form(const CanonicalForm& form) {
    const std::size_t n = form.words[0];
    const std::size_t b = form.words[1];
    std::vector<Edge> edges(b);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < kEdgeSize; ++j) edges[i].v[j] = form.words[2 + i * kEdgeSize + j];
    return Hypergraph(n, std::move(edges), ValidateOptions{.check_overlap = false});
}

// Deterministic choice of `cap` indices out of n, returned ascending.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t cap, std::uint64_t seed, std::size_t level) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (cap == 0 || n <= cap) return idx;
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (level + 1)));
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::string fingerprint(const Hypergraph& start, const CensusConfig& c) {
    std::ostringstream s;
    s << "target=" << c.target_blocks << " k=" << c.plan.k << " start=" << to_string(c.plan.start)
      << " end=" << to_string(c.plan.end) << " increment=" << to_string(c.plan.increment)
      << " drop_disconnected=" << c.plan.drop_disconnected << " cap=" << c.population_cap << " seed=" << c.seed
      << " filter_before_iso=" << c.filter_before_iso << " graph=" << serialize_mmp(canonical_hypergraph(start));
    return s.str();
}

class CensusStore {
public:
    explicit CensusStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    [[nodiscard]] bool enabled() const { return !dir_.empty(); }

    void reset(const std::string& fp) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw CensusError("cannot create state directory " + dir_.string() + ": " + ec.message());
        for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
            const std::string name = entry.path().filename().string();
            if (name.starts_with("level-") || name == "levels.tsv" || name == "state" || name.starts_with("records."))
                std::filesystem::remove(entry.path());
        }
        write_file("levels.tsv", "");
        write_state(fp, 0);
    }

    // Returns the last completed block count, or nullopt without a usable state.
    std::optional<std::size_t> load_state(const std::string& fp) const {
        std::ifstream in(dir_ / "state");
        if (!in) return std::nullopt;
        std::string stored, level;
        if (!std::getline(in, stored) || !std::getline(in, level)) throw CensusError("corrupt census state file");
        if (stored != fp) throw CensusError("state directory belongs to a different census configuration");
        const std::size_t blocks = std::stoul(level);
        return blocks == 0 ? std::nullopt : std::optional<std::size_t>(blocks);
    }

    void save_level(const std::string& fp, const LevelReport& report, const std::vector<Member>& population) {
        std::string mmp, meta;
        for (const Member& m : population) {
            mmp += serialize_mmp(m.graph) + "\n";
            meta += std::to_string(m.parent) + "\t" + to_string(m.rank) + "\n";
        }
        const std::string stem = "level-" + std::to_string(report.blocks);
        write_file(stem + ".mmp", mmp);
        write_file(stem + ".meta", meta);
        std::ofstream levels(dir_ / "levels.tsv", std::ios::app);
        levels << report.blocks << '\t' << report.generated << '\t' << report.distinct << '\t' << report.noncolorable
               << '\t' << report.nonisomorphic << '\t' << report.kept << '\n';
        if (!levels) throw CensusError("cannot append to levels.tsv");
        levels.close();
        write_state(fp, report.blocks);
    }

    std::vector<Member> load_population(std::size_t blocks) const {
        const std::string stem = "level-" + std::to_string(blocks);
        std::ifstream mmp(dir_ / (stem + ".mmp"));
        std::ifstream meta(dir_ / (stem + ".meta"));
        if (!mmp || !meta) throw CensusError("missing population files for level " + std::to_string(blocks));
        std::vector<Member> out;
        std::string line, info;
        while (std::getline(mmp, line)) {
            if (!std::getline(meta, info)) throw CensusError("population metadata is shorter than population");
            Member m;
            m.graph = parse_mmp(line).graph;
            const auto tab = info.find('\t');
            if (tab == std::string::npos) throw CensusError("corrupt population metadata");
            m.parent = std::stoul(info.substr(0, tab));
            m.rank = parse_count(info.substr(tab + 1));
            out.push_back(std::move(m));
        }
        return out;
    }

    std::vector<LevelReport> load_reports() const {
        std::ifstream in(dir_ / "levels.tsv");
        std::vector<LevelReport> out;
        LevelReport r;
        while (in >> r.blocks >> r.generated >> r.distinct >> r.noncolorable >> r.nonisomorphic >> r.kept)
            out.push_back(r);
        return out;
    }

    void save_records(const std::vector<CensusRecord>& records) {
        std::string mmp, tsv = record_header() + "\n";
        for (const CensusRecord& r : records) {
            mmp += r.canonical_mmp + "\n";
            tsv += format_record(r) + "\n";
        }
        write_file("records.mmp", mmp);
        write_file("records.tsv", tsv);
    }

private:
    void write_state(const std::string& fp, std::size_t blocks) { write_file("state", fp + "\n" + std::to_string(blocks) + "\n"); }

    void write_file(const std::string& name, const std::string& content) const {
        const auto tmp = dir_ / (name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << content;
            if (!out) throw CensusError("cannot write " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, dir_ / name, ec);
        if (ec) throw CensusError("cannot replace " + (dir_ / name).string() + ": " + ec.message());
    }

    std::filesystem::path dir_;
};

std::vector<Member> run_level(const std::vector<Member>& population, std::size_t k, std::size_t cap,
                              const CensusConfig& config, LevelReport& report) {
    // Map: strip every parent.
    std::vector<std::vector<Member>> per_parent(population.size());
    parallel_for(population.size(), config.jobs, [&](std::size_t p) {
        const Hypergraph& g = population[p].graph;
        StripPlan plan = config.plan;
        plan.k = k;
        plan.renormalize_output = true;
        const Count total = count_strips(g, k);
        if (plan.end == 0 || plan.end > total) plan.end = total;
        if (plan.start > plan.end) return;
        enumerate_strips(g, plan, [&](const Strip& s) {
            per_parent[p].push_back({s.graph, p, s.rank});
            return true;
        });
    });

    // Reduce in parent order so first occurrences do not depend on scheduling.
    std::vector<Member> distinct;
    ExactDeduper exact;
    for (auto& batch : per_parent) {
        report.generated += batch.size();
        for (Member& m : batch)
            if (exact.insert(m.graph)) distinct.push_back(std::move(m));
        batch.clear();
    }
    report.distinct = distinct.size();

    std::vector<char> noncolorable(distinct.size(), 0);
    std::vector<std::optional<CanonicalForm>> forms(distinct.size());
    std::vector<std::size_t> survivors;
    IsoDeduper iso;
    if (config.filter_before_iso) {
        parallel_for(distinct.size(), config.jobs, [&](std::size_t i) {
            noncolorable[i] = is_noncolorable(distinct[i].graph);
            if (noncolorable[i]) forms[i] = canonical_form(distinct[i].graph);
        });
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            if (!noncolorable[i]) continue;
            ++report.noncolorable;
            if (iso.insert(*forms[i])) survivors.push_back(i);
        }
        report.nonisomorphic = survivors.size();
    } else {
        parallel_for(distinct.size(), config.jobs, [&](std::size_t i) { forms[i] = canonical_form(distinct[i].graph); });
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < distinct.size(); ++i)
            if (iso.insert(*forms[i])) reps.push_back(i);
        report.nonisomorphic = reps.size();
        parallel_for(reps.size(), config.jobs,
                     [&](std::size_t j) { noncolorable[reps[j]] = is_noncolorable(distinct[reps[j]].graph); });
        for (std::size_t i : reps)
            if (noncolorable[i]) survivors.push_back(i);
        report.noncolorable = survivors.size();
    }

    std::sort(survivors.begin(), survivors.end(), [&](std::size_t a, std::size_t b) { return *forms[a] < *forms[b]; });
    const std::vector<std::size_t> keep =
        sample_indices(survivors.size(), cap, config.seed, report.blocks);
    std::vector<Member> next;
    next.reserve(keep.size());
    for (std::size_t j : keep) {
        const std::size_t i = survivors[j];
        next.push_back({from_form(*forms[i]), distinct[i].parent, distinct[i].rank});
    }
    report.kept = next.size();
    return next;
}

}  // namespace

CensusResult census(const Hypergraph& start, const CensusConfig& config,
                    const std::function<void(const LevelReport&)>& progress) {
    if (config.target_blocks >= start.edge_count())
        throw std::invalid_argument("target block count must be below the starting block count");
    if (config.plan.k == 0) throw std::invalid_argument("edges removed per level must be at least 1");
    if (config.plan.increment < 1) throw std::invalid_argument("increment must be at least 1");

    CensusStore store(config.state_dir);
    const std::string fp = store.enabled() ? fingerprint(start, config) : std::string();
    CensusResult result;

    std::size_t blocks = start.edge_count();
    std::vector<Member> population{{canonical_hypergraph(start), 0, 0}};
    bool resumed = false;
    if (store.enabled() && config.resume) {
        if (auto saved = store.load_state(fp)) {
            blocks = *saved;
            population = store.load_population(blocks);
            result.levels = store.load_reports();
            resumed = true;
        }
    }
    if (store.enabled() && !resumed) store.reset(fp);

    std::size_t computed = 0;
    while (blocks > config.target_blocks) {
        if (config.max_levels && computed == config.max_levels) return result;
        const std::size_t k = std::min(config.plan.k, blocks - config.target_blocks);
        LevelReport report;
        report.blocks = blocks - k;
        // The target level is never subsampled: every survivor becomes a record.
        const std::size_t cap = blocks - k == config.target_blocks ? 0 : config.population_cap;
        population = run_level(population, k, cap, config, report);
        blocks -= k;
        ++computed;
        if (store.enabled()) store.save_level(fp, report, population);
        result.levels.push_back(report);
        if (progress) progress(report);
    }

    result.records.resize(population.size());
    parallel_for(population.size(), config.jobs, [&](std::size_t i) {
        const Member& m = population[i];
        CensusRecord& r = result.records[i];
        r.canonical_mmp = serialize_mmp(m.graph);
        r.vertices = m.graph.vertex_count();
        r.blocks = m.graph.edge_count();
        if (r.blocks <= config.loop_max_blocks) r.max_loop = max_loop_order(m.graph);
        r.parity = parity_proof(m.graph).holds;
        if (r.blocks <= config.critical_max_blocks) r.critical = is_critical(m.graph);
        r.source_parent = m.parent;
        r.source_rank = m.rank;
        r.seed = config.seed;
    });
    if (store.enabled()) store.save_records(result.records);
    result.complete = true;
    return result;
}

CoreSampleResult sample_critical_cores(const Hypergraph& start, const CoreSampleConfig& config) {
    if (!is_noncolorable(start)) throw std::invalid_argument("starting hypergraph is colorable");
    std::vector<CanonicalForm> found(config.samples);
    parallel_for(config.samples, config.jobs, [&](std::size_t i) {
        std::seed_seq sq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                         static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(std::uint64_t{i} >> 32)};
        std::mt19937_64 rng(sq);
        std::vector<std::size_t> order(start.edge_count());
        for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<char> kept(start.edge_count(), 1);
        std::vector<std::size_t> trial;
        for (std::size_t e : order) {
            trial.clear();
            for (std::size_t f = 0; f < kept.size(); ++f)
                if (kept[f] && f != e) trial.push_back(f);
            if (is_noncolorable(start.with_edges(trial))) kept[e] = 0;
        }
        trial.clear();
        for (std::size_t f = 0; f < kept.size(); ++f)
            if (kept[f]) trial.push_back(f);
        found[i] = canonical_form(renormalize(start.with_edges(trial)));
    });

    std::map<CanonicalForm, std::pair<std::size_t, std::size_t>> classes;  // first descent, hits
    for (std::size_t i = 0; i < found.size(); ++i) ++classes.try_emplace(found[i], i, 0).first->second.second;
    std::vector<std::pair<const CanonicalForm*, std::pair<std::size_t, std::size_t>>> order;
    for (const auto& [form, v] : classes) order.emplace_back(&form, v);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first->words[1] < b.first->words[1]; });

    CoreSampleResult result;
    result.records.resize(order.size());
    result.hits.resize(order.size());
    parallel_for(order.size(), config.jobs, [&](std::size_t j) {
        const Hypergraph g = from_form(*order[j].first);
        CensusRecord& r = result.records[j];
        r.canonical_mmp = serialize_mmp(g);
        r.vertices = g.vertex_count();
        r.blocks = g.edge_count();
        if (r.blocks <= config.loop_max_blocks) r.max_loop = max_loop_order(g);
        r.parity = parity_proof(g).holds;
        r.critical = is_critical(g);
        r.source_parent = order[j].second.first;
        r.seed = config.seed;
        result.hits[j] = order[j].second.second;
    });
    return result;
}

std::string record_header() {
    return "mmp\tvertices\tblocks\tmax_loop\tparity\tcritical\tsource_parent\tsource_rank\tseed";
}

std::string format_record(const CensusRecord& r) {
    std::ostringstream s;
    s << r.canonical_mmp << '\t' << r.vertices << '\t' << r.blocks << '\t'
      << (r.max_loop ? std::to_string(*r.max_loop) : "-") << '\t' << (r.parity ? "yes" : "no") << '\t'
      << (r.critical ? (*r.critical ? "yes" : "no") : "-") << '\t' << r.source_parent << '\t'
      << to_string(r.source_rank) << '\t' << r.seed;
    return s.str();
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CensusError("cannot open corpus file " + path.string());
    std::vector<CorpusEntry> out;
    std::string line;
    std::size_t n = 0;
    auto flag = [&](const std::string& s) {
        if (s == "yes") return true;
        if (s == "no") return false;
        throw CensusError("corpus line " + std::to_string(n) + ": expected yes/no, got '" + s + "'");
    };
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::istringstream fields(line);
        for (std::string x; std::getline(fields, x, '\t');) f.push_back(x);
        if (f.size() != 8) throw CensusError("corpus line " + std::to_string(n) + ": expected 8 tab-separated fields");
        CorpusEntry e;
        e.name = f[0];
        e.mmp = f[1];
        try {
            e.vertices = std::stoul(f[2]);
            e.blocks = std::stoul(f[3]);
            if (f[6] != "-") e.max_loop = std::stoul(f[6]);
        } catch (const std::exception&) {
            throw CensusError("corpus line " + std::to_string(n) + ": bad number");
        }
        e.noncolorable = flag(f[4]);
        e.critical = flag(f[5]);
        e.parity = flag(f[7]);
        out.push_back(std::move(e));
    }
    if (out.empty()) throw CensusError("corpus file " + path.string() + " has no entries");
    return out;
}

bool CorpusReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CorpusCheck& c) { return c.passed; });
}

CorpusReport verify_corpus(const std::vector<CorpusEntry>& entries) {
    CorpusReport report;
    IsoDeduper classes;
    for (const CorpusEntry& e : entries) {
        auto check = [&](std::string property, bool passed, std::string detail = {}) {
            report.checks.push_back({e.name, std::move(property), passed, std::move(detail)});
        };
        Hypergraph h;
        try {
            h = parse_mmp(e.mmp).graph;
            check("parse", true);
        } catch (const MmpError& err) {
            check("parse", false, err.what());
            continue;
        }
        classes.insert(h);
        check("shape", h.vertex_count() == e.vertices && h.edge_count() == e.blocks,
              std::to_string(h.vertex_count()) + "-" + std::to_string(h.edge_count()));
        check("connected", h.is_connected());
        const bool nc = is_noncolorable(h);
        check("noncolorable", nc == e.noncolorable, nc ? "yes" : "no");
        const bool crit = is_critical(h);
        check("critical", crit == e.critical, crit ? "yes" : "no");
        if (e.max_loop) {
            const std::size_t m = max_loop_order(h);
            check("max_loop", m == *e.max_loop, std::to_string(m));
        }
        const ParityVerdict pv = parity_proof(h);
        check("parity", pv.holds == e.parity, pv.holds ? "yes" : "no");
    }
    report.distinct_classes = classes.size();
    return report;
}

}  // namespace ksforge

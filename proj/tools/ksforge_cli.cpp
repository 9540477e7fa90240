// ksforge command-line front end. Talks to the library only through the C API.

#include <ksforge/ksforge.h>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#ifndef KSFORGE_DEFAULT_CORPUS
#define KSFORGE_DEFAULT_CORPUS "data/corpus.tsv"
#endif

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Failure {
    std::string message;
};

struct HypergraphDeleter {
    void operator()(ks_hypergraph* h) const { ks_hypergraph_free(h); }
};
using HypergraphPtr = std::unique_ptr<ks_hypergraph, HypergraphDeleter>;

struct StringDeleter {
    void operator()(char* s) const { ks_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

void check(ks_status s) {
    if (s != KS_OK) throw Failure{std::string(ks_status_name(s)) + ": " + ks_last_error()};
}

std::string serialize(const ks_hypergraph* h) {
    char* out = nullptr;
    check(ks_hypergraph_serialize(h, &out));
    return OwnedString(out).get();
}

std::string shape(const ks_hypergraph* h) {
    return std::to_string(ks_hypergraph_vertex_count(h)) + "-" + std::to_string(ks_hypergraph_edge_count(h));
}

std::string label(uint32_t v) {
    const char c = ks_label(v);
    return c ? std::string(1, c) : "#" + std::to_string(v + 1);
}

struct Input {
    std::size_t line = 0;
    std::string text;
};

// MMP lines from a file or stdin; '#' comments and blank lines are skipped.
std::vector<Input> read_inputs(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw Failure{"cannot open " + path};
        in = &file;
    }
    std::vector<Input> out;
    std::string line;
    for (std::size_t n = 1; std::getline(*in, line); ++n) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back({n, line});
    }
    return out;
}

struct Parsed {
    Input input;
    HypergraphPtr graph;
    std::string error;
};

std::vector<Parsed> parse_inputs(const std::string& path, bool warn = true) {
    std::vector<Parsed> out;
    for (Input& in : read_inputs(path)) {
        ks_hypergraph* h = nullptr;
        int missing = 0;
        const ks_status s = ks_hypergraph_parse(in.text.c_str(), 0, &h, &missing);
        Parsed p{std::move(in), HypergraphPtr(h), {}};
        if (s != KS_OK) {
            p.error = std::string(ks_status_name(s)) + ": " + ks_last_error();
            std::cerr << "line " << p.input.line << ": " << p.error << "\n";
        } else if (missing && warn) {
            std::cerr << "line " << p.input.line << ": warning: missing terminal period\n";
        }
        out.push_back(std::move(p));
    }
    return out;
}

// Runs `body` for every parsed hypergraph; parse failures count as failures.
template <class F>
int for_each_graph(const std::string& path, F&& body) {
    int status = kPass;
    for (Parsed& p : parse_inputs(path)) {
        if (!p.graph) {
            status = kFail;
            continue;
        }
        if (!body(p.graph.get())) status = kFail;
    }
    return status;
}

HypergraphPtr single_graph(const std::string& path) {
    auto parsed = parse_inputs(path);
    if (parsed.size() != 1) throw Failure{"expected exactly one hypergraph, got " + std::to_string(parsed.size())};
    if (!parsed[0].graph) throw Failure{"unreadable hypergraph"};
    return std::move(parsed[0].graph);
}

const char* opt_c_str(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

// ---- verbs ---------------------------------------------------------------

int cmd_parse(const std::string& path, bool renormalize) {
    return for_each_graph(path, [&](ks_hypergraph* h) {
        HypergraphPtr owned;
        if (renormalize) {
            ks_hypergraph* r = nullptr;
            check(ks_hypergraph_renormalize(h, &r));
            owned.reset(r);
            h = r;
        }
        std::cout << shape(h) << "\t" << serialize(h) << "\n";
        return true;
    });
}

struct StripOptions {
    std::size_t k = 1;
    std::string start, end, increment;
    bool drop_disconnected = false;
    bool no_renormalize = false;
    bool count_only = false;
};

int cmd_strip(const std::string& path, const StripOptions& o) {
    return for_each_graph(path, [&](ks_hypergraph* h) {
        if (o.count_only) {
            char* count = nullptr;
            check(ks_strip_count(h, o.k, &count));
            std::cout << OwnedString(count).get() << "\n";
            return true;
        }
        ks_strip_plan plan;
        ks_strip_plan_init(&plan);
        plan.k = o.k;
        plan.start = opt_c_str(o.start);
        plan.end = opt_c_str(o.end);
        plan.increment = opt_c_str(o.increment);
        plan.drop_disconnected = o.drop_disconnected;
        plan.renormalize = !o.no_renormalize;
        check(ks_strip(
            h, &plan,
            [](const ks_hypergraph* g, void*) {
                std::cout << serialize(g) << "\n";
                return 1;
            },
            nullptr));
        return true;
    });
}

int cmd_color(const std::string& path) {
    return for_each_graph(path, [](ks_hypergraph* h) {
        std::vector<uint8_t> values(ks_hypergraph_vertex_count(h));
        int colorable = 0;
        check(ks_find_coloring(h, &colorable, values.data(), values.size()));
        if (!colorable) {
            std::cout << "K\n";
            return true;
        }
        // Witness: one 0/1 digit per vertex, in label order.
        std::string bits;
        for (uint8_t x : values) bits += x ? '1' : '0';
        std::cout << bits << "\n";
        return true;
    });
}

int cmd_canon(const std::string& path) {
    return for_each_graph(path, [](ks_hypergraph* h) {
        ks_hypergraph* c = nullptr;
        check(ks_canonical(h, &c));
        HypergraphPtr owned(c);
        std::cout << serialize(c) << "\n";
        return true;
    });
}

int cmd_isodedupe(const std::string& path) {
    ks_dedupe* d = nullptr;
    check(ks_dedupe_create(KS_DEDUPE_ISO, &d));
    std::unique_ptr<ks_dedupe, decltype(&ks_dedupe_free)> owned(d, ks_dedupe_free);
    std::size_t total = 0;
    const int status = for_each_graph(path, [&](ks_hypergraph* h) {
        ++total;
        int is_new = 0;
        check(ks_dedupe_insert(d, h, &is_new));
        if (is_new) std::cout << serialize(h) << "\n";
        return true;
    });
    std::cerr << total << " read, " << ks_dedupe_size(d) << " isomorphism classes\n";
    return status;
}

int cmd_loops(const std::string& path, bool witness, uint64_t budget) {
    return for_each_graph(path, [&](ks_hypergraph* h) {
        const std::size_t cap = ks_hypergraph_edge_count(h);
        std::vector<size_t> edges(cap);
        std::vector<uint32_t> junctions(cap);
        ks_loop_result r{};
        check(ks_max_loop(h, budget, &r, edges.data(), junctions.data(), cap));
        std::cout << "order " << r.order;
        if (!r.exact) std::cout << " (lower bound, budget exhausted)";
        if (witness && r.witness_len) {
            std::cout << "\tedges";
            for (std::size_t i = 0; i < r.witness_len; ++i) {
                uint32_t e[4];
                check(ks_hypergraph_edge(h, edges[i], e));
                std::cout << (i ? "," : " ");
                for (uint32_t v : e) std::cout << label(v);
            }
            std::cout << "\tjunctions ";
            for (std::size_t i = 0; i < r.witness_len; ++i) std::cout << label(junctions[i]);
        }
        std::cout << "\n";
        return r.exact != 0;
    });
}

int cmd_parity(const std::string& path) {
    return for_each_graph(path, [](ks_hypergraph* h) {
        std::vector<uint32_t> odd(ks_hypergraph_vertex_count(h));
        ks_parity_verdict v{};
        check(ks_parity_proof(h, &v, odd.data(), odd.size()));
        if (v.holds) {
            std::cout << "holds\n";
            return true;
        }
        std::cout << "fails";
        if (!v.edge_count_odd) std::cout << " even-block-count";
        if (v.offending_count) {
            std::cout << " odd-degree=";
            for (std::size_t i = 0; i < v.offending_count; ++i) std::cout << label(odd[i]);
        }
        std::cout << "\n";
        return false;
    });
}

struct ParitySearchState {
    const ks_hypergraph* graph = nullptr;
    bool print = true;
    bool classes = false;
    std::size_t solutions = 0;
    std::set<std::vector<uint32_t>> ray_sets;
    ks_dedupe* iso = nullptr;
};

int visit_parity_solution(const size_t* edges, size_t count, void* user) {
    auto& st = *static_cast<ParitySearchState*>(user);
    ++st.solutions;
    std::vector<uint32_t> rays;
    for (std::size_t i = 0; i < count; ++i) {
        uint32_t e[4];
        check(ks_hypergraph_edge(st.graph, edges[i], e));
        rays.insert(rays.end(), e, e + 4);
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    st.ray_sets.insert(rays);
    if (st.print || st.classes) {
        ks_hypergraph* sub = nullptr;
        check(ks_hypergraph_select(st.graph, edges, count, 0, &sub));
        HypergraphPtr owned(sub);
        if (st.print) std::cout << serialize(sub) << "\n";
        if (st.classes) {
            int is_new = 0;
            check(ks_dedupe_insert(st.iso, sub, &is_new));
        }
    }
    return 1;
}

int cmd_paritysearch(const std::string& path, std::size_t tetrads, bool quiet, bool classes) {
    HypergraphPtr h = single_graph(path);
    ParitySearchState st;
    st.graph = h.get();
    st.print = !quiet;
    st.classes = classes;
    std::unique_ptr<ks_dedupe, decltype(&ks_dedupe_free)> iso(nullptr, ks_dedupe_free);
    if (classes) {
        ks_dedupe* d = nullptr;
        check(ks_dedupe_create(KS_DEDUPE_ISO, &d));
        iso.reset(d);
        st.iso = d;
    }
    check(ks_parity_search(h.get(), tetrads, visit_parity_solution, &st));
    std::cerr << "solutions " << st.solutions << ", ray sets " << st.ray_sets.size();
    if (classes) std::cerr << ", isomorphism classes " << ks_dedupe_size(st.iso);
    std::cerr << "\n";
    return kPass;
}

int cmd_realize(const std::string& path, uint64_t budget) {
    ks_ray_system* rs = nullptr;
    check(ks_ray_system_600cell(&rs));
    std::unique_ptr<ks_ray_system, decltype(&ks_ray_system_free)> owned(rs, ks_ray_system_free);
    bool first = true;
    return for_each_graph(path, [&](ks_hypergraph* h) {
        if (!first) std::cout << "\n";
        first = false;
        std::vector<size_t> mapping(ks_hypergraph_vertex_count(h));
        int found = 0;
        check(ks_find_assignment(h, rs, budget, &found, mapping.data(), mapping.size()));
        if (!found) {
            std::cout << "no assignment in the 600-cell pool\n";
            return false;
        }
        for (std::size_t v = 0; v < mapping.size(); ++v) {
            char* text = nullptr;
            check(ks_ray_system_ray_text(rs, mapping[v], &text));
            std::cout << label(static_cast<uint32_t>(v)) << " : " << OwnedString(text).get() << "\n";
        }
        return true;
    });
}

int cmd_critical(const std::string& path) {
    return for_each_graph(path, [](ks_hypergraph* h) {
        int critical = 0;
        check(ks_is_critical(h, &critical));
        std::cout << (critical ? "critical" : "not critical") << "\n";
        return critical != 0;
    });
}

struct CensusOptions {
    std::size_t target = 0;
    std::size_t k = 1;
    std::string start, end, increment;
    bool keep_disconnected = false;
    std::size_t cap = 0;
    std::size_t critical_max = 25;
    std::size_t loop_max = 30;
    bool iso_first = false;
    std::string state_dir;
    std::size_t max_levels = 0;
    bool critical_only = false;
    std::size_t cores = 0;
};

int cmd_cores(const std::string& path, const CensusOptions& o, uint64_t seed, std::size_t jobs) {
    HypergraphPtr h = single_graph(path);
    ks_core_config c;
    ks_core_config_init(&c);
    c.samples = o.cores;
    c.seed = seed;
    c.jobs = jobs;
    c.loop_max_blocks = o.loop_max;

    struct State {
        std::size_t target;
        bool header = false;
        std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> shapes;
    } st{o.target, false, {}};
    check(ks_sample_cores(
        h.get(), &c,
        [](const ks_census_record* r, size_t hits, void* user) {
            auto& s = *static_cast<State*>(user);
            auto& shape = s.shapes[{r->blocks, r->vertices}];
            ++shape.first;
            shape.second += hits;
            if (r->blocks > s.target) return 1;
            if (!s.header) {
                std::cout << "# " << ks_census_record_header() << "\n";
                s.header = true;
            }
            std::cout << r->line << "\n";
            return 1;
        },
        &st, nullptr));
    for (const auto& [shape, n] : st.shapes)
        std::cerr << "core " << shape.second << "-" << shape.first << ": classes " << n.first << ", descents "
                  << n.second << "\n";
    return kPass;
}

int cmd_census(const std::string& path, const CensusOptions& o, uint64_t seed, std::size_t jobs,
               const std::string& resume) {
    HypergraphPtr h = single_graph(path);
    ks_census_config c;
    ks_census_config_init(&c);
    c.target_blocks = o.target;
    c.plan.k = o.k;
    c.plan.start = opt_c_str(o.start);
    c.plan.end = opt_c_str(o.end);
    c.plan.increment = opt_c_str(o.increment);
    c.plan.drop_disconnected = !o.keep_disconnected;
    c.population_cap = o.cap;
    c.seed = seed;
    c.jobs = jobs;
    c.critical_max_blocks = o.critical_max;
    c.loop_max_blocks = o.loop_max;
    c.filter_before_iso = !o.iso_first;
    const std::string dir = resume.empty() ? o.state_dir : resume;
    c.state_dir = opt_c_str(dir);
    c.resume = !resume.empty();
    c.max_levels = o.max_levels;

    struct State {
        bool critical_only;
        bool header = false;
    } st{o.critical_only};
    int complete = 0;
    check(ks_census(
        h.get(), &c,
        [](const ks_level_report* r, void*) {
            std::cerr << "blocks " << r->blocks << ": generated " << r->generated << ", distinct " << r->distinct
                      << ", noncolorable " << r->noncolorable << ", nonisomorphic " << r->nonisomorphic
                      << ", kept " << r->kept << "\n";
        },
        [](const ks_census_record* r, void* user) {
            auto& s = *static_cast<State*>(user);
            if (s.critical_only && r->critical != 1) return 1;
            if (!s.header) {
                std::cout << "# " << ks_census_record_header() << "\n";
                s.header = true;
            }
            std::cout << r->line << "\n";
            return 1;
        },
        &st, &complete));
    if (!complete) std::cerr << "stopped early; continue with --resume " << dir << "\n";
    return kPass;
}

int cmd_verify_corpus(const std::string& path, bool verbose) {
    struct State {
        bool verbose;
    } st{verbose};
    int all = 0;
    size_t classes = 0;
    check(ks_verify_corpus(
        path.c_str(),
        [](const ks_corpus_check* c, void* user) {
            if (!c->passed || static_cast<State*>(user)->verbose)
                std::cout << (c->passed ? "ok   " : "FAIL ") << c->name << "\t" << c->property << "\t" << c->detail
                          << "\n";
        },
        &st, &all, &classes));
    std::cout << (all ? "all checks passed" : "some checks failed") << "; " << classes
              << " isomorphism classes\n";
    return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kochen-Specker hypergraph toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", ks_version());

    std::string input = "-";
    std::size_t jobs = 1;
    uint64_t seed = 1;
    std::string resume;
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Sampling seed");
    app.add_option("--resume", resume, "Continue a census from this state directory");

    auto with_input = [&](CLI::App* sub) {
        sub->add_option("input", input, "MMP file, one hypergraph per line ('-' = stdin)");
        return sub;
    };

    bool renormalize = false;
    auto* parse = with_input(app.add_subcommand("parse", "Validate and echo hypergraphs as N-B and MMP"));
    parse->add_flag("--renormalize", renormalize, "Relabel vertices in first-appearance order");

    StripOptions strip;
    auto* strip_cmd = with_input(app.add_subcommand("strip", "Remove k edges in every ranked combination"));
    strip_cmd->add_option("-k", strip.k, "Edges removed")->check(CLI::PositiveNumber);
    strip_cmd->add_option("--start", strip.start, "First 1-based rank");
    strip_cmd->add_option("--end", strip.end, "Last rank (inclusive)");
    strip_cmd->add_option("--increment", strip.increment, "Rank step");
    strip_cmd->add_flag("--drop-disconnected", strip.drop_disconnected, "Skip disconnected results");
    strip_cmd->add_flag("--no-renormalize", strip.no_renormalize, "Keep the original vertex labels");
    strip_cmd->add_flag("--count", strip.count_only, "Only print the number of combinations");

    auto* color = with_input(app.add_subcommand("color", "0/1 colorability: K or a witness per line"));
    auto* canon = with_input(app.add_subcommand("canon", "Canonical relabeling"));
    auto* isodedupe = with_input(app.add_subcommand("isodedupe", "Keep the first member of each isomorphism class"));

    bool witness = false;
    uint64_t loop_budget = 0;
    auto* loops = with_input(app.add_subcommand("loops", "Maximal loop order"));
    loops->add_flag("--witness", witness, "Print one maximal loop");
    loops->add_option("--budget", loop_budget, "Search node budget (0 = unlimited)");

    auto* parity = with_input(app.add_subcommand("parity", "Parity proof check"));

    std::size_t tetrads = 0;
    bool quiet = false, classes = false;
    auto* paritysearch =
        with_input(app.add_subcommand("paritysearch", "Odd sets of T edges covering each ray exactly twice"));
    paritysearch->add_option("-T,--tetrads", tetrads, "Number of edges T (odd)")->required();
    paritysearch->add_flag("--quiet", quiet, "Only print the summary");
    paritysearch->add_flag("--classes", classes, "Count isomorphism classes of the solutions");

    uint64_t realize_budget = 0;
    auto* realize = with_input(app.add_subcommand("realize", "Assign 600-cell rays to the vertices"));
    realize->add_option("--budget", realize_budget, "Search node budget (0 = unlimited)");

    auto* critical = with_input(app.add_subcommand("critical", "Criticality; fails when a hypergraph is not critical"));

    CensusOptions census;
    auto* census_cmd = with_input(app.add_subcommand("census", "Level-wise stripping census"));
    census_cmd->add_option("--target", census.target, "Stop at this block count")->required();
    census_cmd->add_option("-k", census.k, "Edges removed per level")->check(CLI::PositiveNumber);
    census_cmd->add_option("--start", census.start, "First rank per parent");
    census_cmd->add_option("--end", census.end, "Last rank per parent");
    census_cmd->add_option("--increment", census.increment, "Rank step per parent");
    census_cmd->add_flag("--keep-disconnected", census.keep_disconnected, "Keep disconnected strips");
    census_cmd->add_option("--cap", census.cap, "Population kept per level (0 = all)");
    census_cmd->add_option("--critical-max", census.critical_max, "Decide criticality up to this many blocks");
    census_cmd->add_option("--loop-max", census.loop_max, "Compute loop orders up to this many blocks");
    census_cmd->add_flag("--iso-first", census.iso_first, "Reject isomorphs before the colorability filter");
    census_cmd->add_option("--state", census.state_dir, "Persist levels in this directory");
    census_cmd->add_option("--max-levels", census.max_levels, "Stop after this many levels");
    census_cmd->add_flag("--critical-only", census.critical_only, "Print only critical records");
    census_cmd->add_option("--cores", census.cores,
                           "Sample this many random greedy descents to critical cores instead of "
                           "level-wise stripping; prints cores with at most --target blocks")
        ->check(CLI::PositiveNumber)
        ->excludes("--state")
        ->excludes("--max-levels")
        ->excludes("--cap")
        ->excludes("--iso-first")
        ->excludes("-k");

    std::string corpus = KSFORGE_DEFAULT_CORPUS;
    bool verbose = false;
    auto* verify = app.add_subcommand("verify-corpus", "Check every corpus entry against its expected properties");
    verify->add_option("corpus", corpus, "Corpus file");
    verify->add_flag("-v,--verbose", verbose, "Print passing checks too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    if (*census_cmd && census.cores && !resume.empty()) {
        std::cerr << "ksforge: --resume does not apply to --cores\n";
        return kUsage;
    }

    try {
        if (*parse) return cmd_parse(input, renormalize);
        if (*strip_cmd) return cmd_strip(input, strip);
        if (*color) return cmd_color(input);
        if (*canon) return cmd_canon(input);
        if (*isodedupe) return cmd_isodedupe(input);
        if (*loops) return cmd_loops(input, witness, loop_budget);
        if (*parity) return cmd_parity(input);
        if (*paritysearch) return cmd_paritysearch(input, tetrads, quiet, classes);
        if (*realize) return cmd_realize(input, realize_budget);
        if (*critical) return cmd_critical(input);
        if (*census_cmd && census.cores) return cmd_cores(input, census, seed, jobs);
        if (*census_cmd) return cmd_census(input, census, seed, jobs, resume);
        if (*verify) return cmd_verify_corpus(corpus, verbose);
    } catch (const Failure& f) {
        std::cerr << "ksforge: " << f.message << "\n";
        return kFail;
    }
    return kUsage;
}

#include "ksforge/ksforge.h"

#include <cstring>
#include <string>

#include "ksforge/coloring.hpp"
#include "ksforge/geometry.hpp"
#include "ksforge/iso.hpp"
#include "ksforge/loops.hpp"
#include "ksforge/mmp.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/pipeline.hpp"
#include "ksforge/strip.hpp"

struct ks_hypergraph {
    ksforge::Hypergraph g;
};

struct ks_dedupe {
    ks_dedupe_mode mode;
    ksforge::ExactDeduper exact;
    ksforge::IsoDeduper iso;
};

struct ks_ray_system {
    ksforge::RaySystem rs;
};

namespace {

thread_local std::string last_error;

struct ApiError {
    ks_status status;
    std::string message;
};

template <class T>
void require(T* p, const char* what) {
    if (p == nullptr) throw ApiError{KS_ERR_INVALID, std::string(what) + " must not be NULL"};
}

void require_capacity(std::size_t capacity, std::size_t needed, const char* what) {
    if (capacity < needed)
        throw ApiError{KS_ERR_RANGE, std::string(what) + " needs room for " + std::to_string(needed) + " entries"};
}

template <class F>
ks_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return KS_OK;
    } catch (const ApiError& e) {
        last_error = e.message;
        return e.status;
    } catch (const ksforge::MmpError& e) {
        last_error = e.what();
        return e.kind() == ksforge::MmpError::Kind::Alphabet ? KS_ERR_LIMIT : KS_ERR_PARSE;
    } catch (const ksforge::CensusError& e) {
        last_error = e.what();
        return KS_ERR_IO;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return KS_ERR_INVALID;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return KS_ERR_RANGE;
    } catch (const std::overflow_error& e) {
        last_error = e.what();
        return KS_ERR_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return KS_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return KS_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ks_hypergraph* wrap(ksforge::Hypergraph g) {
    return new ks_hypergraph{std::move(g)};
}

ksforge::ValidateOptions validate_flags(unsigned flags) {
    return ksforge::ValidateOptions{.check_overlap = (flags & KS_PARSE_NO_OVERLAP_CHECK) == 0};
}

ksforge::StripPlan to_plan(const ks_strip_plan& p) {
    ksforge::StripPlan plan;
    plan.k = p.k;
    if (p.start) plan.start = ksforge::parse_count(p.start);
    if (p.end) plan.end = ksforge::parse_count(p.end);
    if (p.increment) plan.increment = ksforge::parse_count(p.increment);
    plan.drop_disconnected = p.drop_disconnected != 0;
    plan.renormalize_output = p.renormalize != 0;
    return plan;
}

}  // namespace

extern "C" {

const char* ks_version(void) {
    return "0.1.0";
}

const char* ks_status_name(ks_status status) {
    switch (status) {
        case KS_OK: return "ok";
        case KS_ERR_PARSE: return "parse error";
        case KS_ERR_INVALID: return "invalid argument";
        case KS_ERR_RANGE: return "out of range";
        case KS_ERR_IO: return "i/o error";
        case KS_ERR_LIMIT: return "limit exceeded";
        case KS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ks_last_error(void) {
    return last_error.c_str();
}

void ks_string_free(char* s) {
    std::free(s);
}

ks_status ks_hypergraph_parse(const char* text, unsigned flags, ks_hypergraph** out, int* missing_period) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        auto r = ksforge::parse_mmp(text, validate_flags(flags));
        if (missing_period) *missing_period = r.missing_period ? 1 : 0;
        *out = wrap(std::move(r.graph));
    });
}

ks_status ks_hypergraph_create(size_t vertex_count, const uint32_t* edges, size_t edge_count, unsigned flags,
                               ks_hypergraph** out) {
    return guarded([&] {
        require(out, "out");
        if (edge_count) require(edges, "edges");
        std::vector<ksforge::Edge> list(edge_count);
        for (std::size_t i = 0; i < edge_count; ++i)
            for (std::size_t j = 0; j < ksforge::kEdgeSize; ++j) list[i].v[j] = edges[i * ksforge::kEdgeSize + j];
        *out = wrap(ksforge::Hypergraph(vertex_count, std::move(list), validate_flags(flags)));
    });
}

void ks_hypergraph_free(ks_hypergraph* h) {
    delete h;
}

size_t ks_hypergraph_vertex_count(const ks_hypergraph* h) {
    return h ? h->g.vertex_count() : 0;
}

size_t ks_hypergraph_edge_count(const ks_hypergraph* h) {
    return h ? h->g.edge_count() : 0;
}

ks_status ks_hypergraph_edge(const ks_hypergraph* h, size_t index, uint32_t out[4]) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        if (index >= h->g.edge_count()) throw ApiError{KS_ERR_RANGE, "edge index out of range"};
        const auto& e = h->g.edge(index);
        for (std::size_t j = 0; j < ksforge::kEdgeSize; ++j) out[j] = e.v[j];
    });
}

ks_status ks_hypergraph_serialize(const ks_hypergraph* h, char** out) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        *out = dup(ksforge::serialize_mmp(h->g));
    });
}

ks_status ks_hypergraph_renormalize(const ks_hypergraph* h, ks_hypergraph** out) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        *out = wrap(ksforge::renormalize(h->g));
    });
}

int ks_hypergraph_is_connected(const ks_hypergraph* h) {
    return h && h->g.is_connected() ? 1 : 0;
}

ks_status ks_hypergraph_degrees(const ks_hypergraph* h, size_t* out, size_t capacity) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        require_capacity(capacity, h->g.vertex_count(), "out");
        const auto d = h->g.degrees();
        std::copy(d.begin(), d.end(), out);
    });
}

ks_status ks_hypergraph_select(const ks_hypergraph* h, const size_t* edges, size_t count, int renormalize,
                               ks_hypergraph** out) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        if (count) require(edges, "edges");
        std::vector<std::size_t> kept(edges, edges + count);
        for (std::size_t e : kept)
            if (e >= h->g.edge_count()) throw ApiError{KS_ERR_RANGE, "edge index out of range"};
        auto g = h->g.with_edges(kept);
        *out = wrap(renormalize ? ksforge::renormalize(g) : std::move(g));
    });
}

char ks_label(uint32_t vertex) {
    return vertex < ksforge::kMaxTextVertices ? ksforge::label_char(vertex) : '\0';
}

ks_status ks_find_coloring(const ks_hypergraph* h, int* colorable, uint8_t* values, size_t capacity) {
    return guarded([&] {
        require(h, "h");
        require(colorable, "colorable");
        const auto c = ksforge::find_coloring(h->g);
        *colorable = c ? 1 : 0;
        if (c && values) {
            require_capacity(capacity, c->values.size(), "values");
            std::copy(c->values.begin(), c->values.end(), values);
        }
    });
}

void ks_strip_plan_init(ks_strip_plan* plan) {
    if (!plan) return;
    *plan = ks_strip_plan{};
    plan->k = 1;
    plan->renormalize = 1;
}

ks_status ks_strip_count(const ks_hypergraph* h, size_t k, char** count) {
    return guarded([&] {
        require(h, "h");
        require(count, "count");
        *count = dup(ksforge::to_string(ksforge::count_strips(h->g, k)));
    });
}

ks_status ks_strip(const ks_hypergraph* h, const ks_strip_plan* plan, ks_hypergraph_visitor visit, void* user) {
    return guarded([&] {
        require(h, "h");
        require(plan, "plan");
        require(visit, "visit");
        ksforge::enumerate_strips(h->g, to_plan(*plan), [&](const ksforge::Strip& s) {
            const ks_hypergraph view{s.graph};
            return visit(&view, user) != 0;
        });
    });
}

ks_status ks_dedupe_create(ks_dedupe_mode mode, ks_dedupe** out) {
    return guarded([&] {
        require(out, "out");
        if (mode != KS_DEDUPE_EXACT && mode != KS_DEDUPE_ISO) throw ApiError{KS_ERR_INVALID, "unknown dedupe mode"};
        *out = new ks_dedupe{mode, {}, {}};
    });
}

ks_status ks_dedupe_insert(ks_dedupe* d, const ks_hypergraph* h, int* is_new) {
    return guarded([&] {
        require(d, "d");
        require(h, "h");
        const bool fresh = d->mode == KS_DEDUPE_EXACT ? d->exact.insert(h->g) : d->iso.insert(h->g);
        if (is_new) *is_new = fresh ? 1 : 0;
    });
}

size_t ks_dedupe_size(const ks_dedupe* d) {
    if (!d) return 0;
    return d->mode == KS_DEDUPE_EXACT ? d->exact.size() : d->iso.size();
}

void ks_dedupe_free(ks_dedupe* d) {
    delete d;
}

ks_status ks_canonical(const ks_hypergraph* h, ks_hypergraph** out) {
    return guarded([&] {
        require(h, "h");
        require(out, "out");
        *out = wrap(ksforge::canonical_hypergraph(h->g));
    });
}

ks_status ks_are_isomorphic(const ks_hypergraph* a, const ks_hypergraph* b, int* isomorphic, uint32_t* mapping,
                            size_t capacity) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(isomorphic, "isomorphic");
        const auto m = ksforge::are_isomorphic(a->g, b->g);
        *isomorphic = m ? 1 : 0;
        if (m && mapping) {
            require_capacity(capacity, m->mapping.size(), "mapping");
            std::copy(m->mapping.begin(), m->mapping.end(), mapping);
        }
    });
}

ks_status ks_max_loop(const ks_hypergraph* h, uint64_t node_budget, ks_loop_result* result, size_t* witness_edges,
                      uint32_t* witness_junctions, size_t capacity) {
    return guarded([&] {
        require(h, "h");
        require(result, "result");
        const auto r = ksforge::find_max_loop(h->g, {.node_budget = node_budget});
        result->order = r.order;
        result->exact = r.status == ksforge::LoopStatus::Exact ? 1 : 0;
        result->witness_len = 0;
        if (r.witness && (witness_edges || witness_junctions)) {
            require_capacity(capacity, r.witness->order(), "witness");
            for (std::size_t i = 0; i < r.witness->order(); ++i) {
                if (witness_edges) witness_edges[i] = r.witness->edges[i];
                if (witness_junctions) witness_junctions[i] = r.witness->junctions[i];
            }
            result->witness_len = r.witness->order();
        }
    });
}

ks_status ks_parity_proof(const ks_hypergraph* h, ks_parity_verdict* verdict, uint32_t* offending, size_t capacity) {
    return guarded([&] {
        require(h, "h");
        require(verdict, "verdict");
        const auto v = ksforge::parity_proof(h->g);
        verdict->holds = v.holds ? 1 : 0;
        verdict->edge_count_odd = v.edge_count_odd ? 1 : 0;
        verdict->offending_count = v.offending_vertices.size();
        if (offending)
            for (std::size_t i = 0; i < std::min(capacity, v.offending_vertices.size()); ++i)
                offending[i] = v.offending_vertices[i];
    });
}

ks_status ks_parity_search(const ks_hypergraph* h, size_t tetrads, ks_edge_set_visitor visit, void* user) {
    return guarded([&] {
        require(h, "h");
        require(visit, "visit");
        ksforge::parity_subset_search(h->g, tetrads, [&](const std::vector<std::size_t>& edges) {
            return visit(edges.data(), edges.size(), user) != 0;
        });
    });
}

ks_status ks_ray_system_600cell(ks_ray_system** out) {
    return guarded([&] {
        require(out, "out");
        *out = new ks_ray_system{ksforge::generate_600cell()};
    });
}

void ks_ray_system_free(ks_ray_system* rs) {
    delete rs;
}

size_t ks_ray_system_ray_count(const ks_ray_system* rs) {
    return rs ? rs->rs.rays.size() : 0;
}

size_t ks_ray_system_tetrad_count(const ks_ray_system* rs) {
    return rs ? rs->rs.tetrads.size() : 0;
}

ks_status ks_ray_system_ray_text(const ks_ray_system* rs, size_t index, char** out) {
    return guarded([&] {
        require(rs, "rs");
        require(out, "out");
        if (index >= rs->rs.rays.size()) throw ApiError{KS_ERR_RANGE, "ray index out of range"};
        *out = dup(rs->rs.rays[index].str());
    });
}

ks_status ks_ray_system_tetrad(const ks_ray_system* rs, size_t index, size_t out[4]) {
    return guarded([&] {
        require(rs, "rs");
        require(out, "out");
        if (index >= rs->rs.tetrads.size()) throw ApiError{KS_ERR_RANGE, "tetrad index out of range"};
        std::copy(rs->rs.tetrads[index].begin(), rs->rs.tetrads[index].end(), out);
    });
}

ks_status ks_find_assignment(const ks_hypergraph* h, const ks_ray_system* rs, uint64_t node_budget, int* found,
                             size_t* mapping, size_t capacity) {
    return guarded([&] {
        require(h, "h");
        require(rs, "rs");
        require(found, "found");
        const auto a = ksforge::find_assignment(h->g, rs->rs, {.node_budget = node_budget});
        *found = a ? 1 : 0;
        if (a && mapping) {
            require_capacity(capacity, a->size(), "mapping");
            std::copy(a->begin(), a->end(), mapping);
        }
    });
}

ks_status ks_verify_assignment(const ks_hypergraph* h, const ks_ray_system* rs, const size_t* mapping, size_t count,
                               int* valid) {
    return guarded([&] {
        require(h, "h");
        require(rs, "rs");
        require(valid, "valid");
        if (count) require(mapping, "mapping");
        const ksforge::Assignment a(mapping, mapping + count);
        *valid = ksforge::verify_assignment(h->g, rs->rs, a) ? 1 : 0;
    });
}

ks_status ks_is_critical(const ks_hypergraph* h, int* critical) {
    return guarded([&] {
        require(h, "h");
        require(critical, "critical");
        *critical = ksforge::is_critical(h->g) ? 1 : 0;
    });
}

void ks_census_config_init(ks_census_config* config) {
    if (!config) return;
    const ksforge::CensusConfig defaults;
    *config = ks_census_config{};
    ks_strip_plan_init(&config->plan);
    config->plan.drop_disconnected = 1;
    config->seed = defaults.seed;
    config->jobs = defaults.jobs;
    config->critical_max_blocks = defaults.critical_max_blocks;
    config->loop_max_blocks = defaults.loop_max_blocks;
    config->filter_before_iso = 1;
}

const char* ks_census_record_header(void) {
    static const std::string header = ksforge::record_header();
    return header.c_str();
}

ks_status ks_census(const ks_hypergraph* start, const ks_census_config* config, ks_level_visitor on_level,
                    ks_record_visitor on_record, void* user, int* complete) {
    return guarded([&] {
        require(start, "start");
        require(config, "config");
        ksforge::CensusConfig c;
        c.target_blocks = config->target_blocks;
        c.plan = to_plan(config->plan);
        c.population_cap = config->population_cap;
        c.seed = config->seed;
        c.jobs = config->jobs;
        c.critical_max_blocks = config->critical_max_blocks;
        c.loop_max_blocks = config->loop_max_blocks;
        c.filter_before_iso = config->filter_before_iso != 0;
        if (config->state_dir) c.state_dir = config->state_dir;
        c.resume = config->resume != 0;
        c.max_levels = config->max_levels;

        const auto result = ksforge::census(start->g, c, [&](const ksforge::LevelReport& r) {
            if (!on_level) return;
            const ks_level_report report{r.blocks, r.generated, r.distinct, r.noncolorable, r.nonisomorphic, r.kept};
            on_level(&report, user);
        });
        if (complete) *complete = result.complete ? 1 : 0;
        if (!on_record) return;
        for (const auto& r : result.records) {
            const std::string line = ksforge::format_record(r);
            const ks_census_record rec{r.canonical_mmp.c_str(),
                                       r.vertices,
                                       r.blocks,
                                       r.max_loop ? static_cast<long>(*r.max_loop) : -1L,
                                       r.parity ? 1 : 0,
                                       r.critical ? (*r.critical ? 1 : 0) : -1,
                                       line.c_str()};
            if (!on_record(&rec, user)) break;
        }
    });
}

void ks_core_config_init(ks_core_config* config) {
    if (!config) return;
    const ksforge::CoreSampleConfig defaults;
    config->samples = defaults.samples;
    config->seed = defaults.seed;
    config->jobs = defaults.jobs;
    config->loop_max_blocks = defaults.loop_max_blocks;
}

ks_status ks_sample_cores(const ks_hypergraph* start, const ks_core_config* config, ks_core_visitor on_record,
                          void* user, size_t* classes) {
    return guarded([&] {
        require(start, "start");
        require(config, "config");
        ksforge::CoreSampleConfig c;
        c.samples = config->samples;
        c.seed = config->seed;
        c.jobs = config->jobs;
        c.loop_max_blocks = config->loop_max_blocks;
        const auto result = ksforge::sample_critical_cores(start->g, c);
        if (classes) *classes = result.records.size();
        if (!on_record) return;
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            const auto& r = result.records[i];
            const std::string line = ksforge::format_record(r);
            const ks_census_record rec{r.canonical_mmp.c_str(),
                                       r.vertices,
                                       r.blocks,
                                       r.max_loop ? static_cast<long>(*r.max_loop) : -1L,
                                       r.parity ? 1 : 0,
                                       r.critical ? (*r.critical ? 1 : 0) : -1,
                                       line.c_str()};
            if (!on_record(&rec, result.hits[i], user)) break;
        }
    });
}

ks_status ks_verify_corpus(const char* path, ks_corpus_visitor visit, void* user, int* all_passed,
                           size_t* distinct_classes) {
    return guarded([&] {
        require(path, "path");
        const auto report = ksforge::verify_corpus(ksforge::load_corpus(path));
        if (visit)
            for (const auto& c : report.checks) {
                const ks_corpus_check check{c.name.c_str(), c.property.c_str(), c.passed ? 1 : 0, c.detail.c_str()};
                visit(&check, user);
            }
        if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
        if (distinct_classes) *distinct_classes = report.distinct_classes;
    });
}

}  // extern "C"

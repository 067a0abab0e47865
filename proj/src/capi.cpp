#include "zsram/zsram.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "zsram/checks.hpp"
#include "zsram/engine.hpp"
#include "zsram/io.hpp"
#include "zsram/oracle.hpp"

using nlohmann::json;

struct zs_graph {
    zsram::Graph g;
};
struct zs_colouring {
    zsram::EdgeColouring c;
};

namespace {

thread_local std::string g_last_error;

zs_status status_of(const zsram::Error& e) {
    switch (e.kind) {
        case zsram::Error::Kind::validation: return ZS_ERR_VALIDATION;
        case zsram::Error::Kind::structural: return ZS_ERR_STRUCTURAL;
        case zsram::Error::Kind::capacity: return ZS_ERR_CAPACITY;
        case zsram::Error::Kind::truncation: return ZS_ERR_TRUNCATED;
        case zsram::Error::Kind::internal: return ZS_ERR_INTERNAL;
    }
    return ZS_ERR_INTERNAL;
}

template <class Fn>
zs_status guarded(Fn&& fn) {
    try {
        fn();
        return ZS_OK;
    } catch (const zsram::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ZS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* zs_version(void) { return "zsram 1.0.0"; }

const char* zs_last_error(void) { return g_last_error.c_str(); }

void zs_string_free(char* s) { std::free(s); }

zs_status zs_graph_parse(const char* text, zs_graph** out) {
    return guarded([&] {
        std::string body(text);
        size_t first = body.find_first_not_of(" \t\r\n");
        zsram::Graph g = (first != std::string::npos && body[first] == '{')
                             ? zsram::graph_from_json(body)
                             : zsram::graph_from_text(body);
        *out = new zs_graph{std::move(g)};
    });
}

zs_status zs_graph_named(const char* kind, int param, zs_graph** out) {
    return guarded([&] {
        std::string k(kind);
        zsram::Graph g;
        if (k == "cycle")
            g = zsram::make_cycle(param);
        else if (k == "complete")
            g = zsram::make_complete(param);
        else if (k == "matching")
            g = zsram::make_matching(param);
        else if (k == "star")
            g = zsram::make_star(param);
        else
            zsram::throw_validation("unknown named graph kind: " + k);
        *out = new zs_graph{std::move(g)};
    });
}

zs_status zs_graph_random_regular(int degree, int vertices, uint64_t seed, zs_graph** out) {
    return guarded([&] { *out = new zs_graph{zsram::random_regular(degree, vertices, seed)}; });
}

zs_status zs_graph_to_json(const zs_graph* g, char** out) {
    return guarded([&] { *out = dup_string(zsram::graph_to_json(g->g)); });
}

int zs_graph_vertices(const zs_graph* g) { return g->g.vertex_count(); }

int64_t zs_graph_edge_count(const zs_graph* g) { return g->g.edge_count(); }

int zs_graph_max_degree(const zs_graph* g) { return g->g.max_degree(); }

void zs_graph_free(zs_graph* g) { delete g; }

zs_status zs_colouring_parse(const char* text, zs_colouring** out) {
    return guarded([&] { *out = new zs_colouring{zsram::colouring_from_json(text)}; });
}

zs_status zs_colouring_random(const char* group, int t, uint64_t seed, zs_colouring** out) {
    return guarded([&] {
        *out = new zs_colouring{zsram::random_colouring(zsram::parse_group(group), t, seed)};
    });
}

zs_status zs_colouring_planted(const zs_graph* g, const char* group, int t, uint64_t seed,
                               zs_colouring** out) {
    return guarded([&] {
        *out = new zs_colouring{
            zsram::planted_colouring(g->g, zsram::parse_group(group), t, seed)};
    });
}

zs_status zs_colouring_constant(const char* group, int t, const char* element,
                                zs_colouring** out) {
    return guarded([&] {
        zsram::AbelianGroup grp = zsram::parse_group(group);
        zsram::GroupElement e = zsram::parse_element(grp, element);
        *out = new zs_colouring{
            zsram::EdgeColouring::constant(zsram::VertexPool::range(t), grp, e)};
    });
}

zs_status zs_colouring_to_json(const zs_colouring* c, char** out) {
    return guarded([&] { *out = dup_string(zsram::colouring_to_json(c->c)); });
}

int zs_colouring_pool_size(const zs_colouring* c) { return c->c.pool().size(); }

void zs_colouring_free(zs_colouring* c) { delete c; }

zs_status zs_ramsey(const zs_graph* g, const char* group, int t_max, int64_t max_colorings,
                    int symmetry_pruning, int threads, zs_ramsey_result* out) {
    return guarded([&] {
        zsram::SearchBudget budget;
        budget.max_colorings = max_colorings > 0 ? max_colorings : -1;
        budget.symmetry_pruning = symmetry_pruning != 0;
        auto r = zsram::ramsey_number(g->g, zsram::parse_group(group), t_max, budget,
                                      threads > 0 ? threads : 1);
        out->found = r.value.has_value() ? 1 : 0;
        out->value = r.value.value_or(-1);
        out->truncated = r.truncated ? 1 : 0;
        out->colorings_examined = r.colorings_examined;
    });
}

zs_status zs_lower_bound_witness(const zs_graph* g, const char* group, int t,
                                 zs_colouring** witness) {
    return guarded([&] {
        auto r = zsram::lower_bound_witness(g->g, zsram::parse_group(group), t);
        if (r.truncated) zsram::throw_capacity("witness search truncated");
        *witness = r.witness ? new zs_colouring{*r.witness} : nullptr;
    });
}

zs_status zs_find_zero_sum_copy(const zs_graph* g, const zs_colouring* c, char** injection) {
    return guarded([&] {
        auto r = zsram::find_zero_sum_copy(g->g, c->c);
        if (r.truncated) zsram::throw_capacity("copy search truncated");
        if (!r.injection) {
            *injection = nullptr;
            return;
        }
        json j;
        for (const auto& [v, p] : *r.injection) j[std::to_string(v)] = p;
        *injection = dup_string(j.dump());
    });
}

zs_status zs_embed(const zs_graph* g, const zs_colouring* c, const zs_embed_options* options,
                   char** result) {
    return guarded([&] {
        zsram::EngineConfig cfg;
        if (options) {
            cfg.alpha = options->alpha;
            cfg.beta = options->beta;
            if (options->gadget_cap > 0) cfg.gadget_cap = options->gadget_cap;
            cfg.strict_telemetry = options->strict_telemetry != 0;
            cfg.threads = options->threads > 0 ? options->threads : 1;
        }
        zsram::EmbedResult r = zsram::run_embedding(g->g, c->c, cfg);
        json j;
        j["status"] = zsram::engine_status_name(r.status);
        j["alpha"] = r.alpha_used;
        j["beta"] = r.beta_used;
        j["scaled"] = r.scaled;
        if (r.status == zsram::EngineStatus::success) {
            json inj = json::object();
            for (const auto& [v, p] : r.injection) inj[std::to_string(v)] = p;
            j["injection"] = std::move(inj);
            j["certificate"] = zsram::format_element(r.certificate);
        } else {
            j["failure_detail"] = r.failure_detail;
            j["failure_round"] = r.failure_round;
        }
        json transcript = json::array();
        for (const auto& log : r.transcript) {
            json rec;
            rec["round"] = log.round;
            rec["gamma_order"] = log.gamma_order;
            rec["subgroup_order"] = log.subgroup_order;
            rec["lambda"] = log.lambda;
            rec["pairs_used"] = log.pairs_used;
            rec["vertices_used"] = log.vertices_used;
            rec["coset_rep"] = log.coset_rep;
            rec["quotient_after"] = log.quotient_after;
            transcript.push_back(std::move(rec));
        }
        j["transcript"] = std::move(transcript);
        zsram::PoolSizeReport pool_req =
            zsram::required_pool_size(g->g.max_degree(), g->g.edge_count());
        j["pool_requirement"] = {{"alpha", pool_req.alpha},
                                 {"beta", pool_req.beta},
                                 {"ramsey_colours", pool_req.ramsey_colours},
                                 {"bound", pool_req.bound},
                                 {"outside_guaranteed_regime",
                                  pool_req.outside_guaranteed_regime}};
        *result = dup_string(j.dump());
    });
}

zs_status zs_check(const char* suite, const zs_check_options* options, char** result) {
    return guarded([&] {
        zsram::SuiteOptions opt;
        if (options) {
            if (options->max_order > 0) opt.max_order = options->max_order;
            if (options->max_x > 0) opt.max_x = options->max_x;
            if (options->random_cases > 0) opt.random_cases = options->random_cases;
            if (options->count > 0) opt.count = options->count;
            if (options->degree > 0) opt.degree = options->degree;
            if (options->vertices > 0) opt.vertices = options->vertices;
            if (options->seed > 0) opt.seed = options->seed;
        }
        zsram::SuiteResult r = zsram::run_suite(suite, opt);
        json j;
        j["name"] = r.name;
        j["pass"] = r.pass;
        j["cases"] = r.cases;
        j["seconds"] = r.seconds;
        j["detail"] = r.detail;
        *result = dup_string(j.dump());
    });
}

zs_status zs_check_suite_names(char** names_json) {
    return guarded([&] {
        json j = json::array();
        for (const auto& name : zsram::suite_names()) j.push_back(name);
        *names_json = dup_string(j.dump());
    });
}

}  // extern "C"

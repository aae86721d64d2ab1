#include "uesnet.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "uesnet/counting.hpp"
#include "uesnet/cubicize.hpp"
#include "uesnet/exploration.hpp"
#include "uesnet/graph.hpp"
#include "uesnet/race.hpp"
#include "uesnet/route.hpp"

struct ues_graph {
    uesnet::PortLabeledGraph g;
};

struct ues_sequence {
    uesnet::ExplorationSequence seq;
};

struct ues_network {
    uesnet::SimNetwork net;
};

namespace {

thread_local std::string g_last_error;

ues_status fail(ues_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps C++ exceptions onto status codes at the API boundary.
template <typename Fn>
ues_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(UES_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(UES_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(UES_ERR_INTERNAL, e.what());
    }
}

}  // namespace

extern "C" {

const char* ues_last_error(void) { return g_last_error.c_str(); }

ues_status ues_graph_generate(const char* family, uint32_t size, double param, uint64_t seed,
                              ues_graph** out) {
    return guarded([&] {
        if (!family || !out) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        auto fam = uesnet::family_from_name(family);
        if (!fam) return fail(UES_ERR_INVALID_ARGUMENT, std::string("unknown family: ") + family);
        uesnet::GenerateParams params;
        params.family = *fam;
        params.size = size;
        params.p = param;
        params.radius = param;
        *out = new ues_graph{uesnet::generate(params, seed)};
        return UES_OK;
    });
}

ues_status ues_graph_read(const char* path, ues_graph** out) {
    return guarded([&] {
        if (!path || !out) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        *out = new ues_graph{uesnet::read_graph_file(path)};
        return UES_OK;
    });
}

ues_status ues_graph_write(const ues_graph* g, const char* path) {
    return guarded([&] {
        if (!g || !path) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::write_graph_file(path, g->g);
        return UES_OK;
    });
}

ues_status ues_graph_validate(const ues_graph* g, int* ok, char** report) {
    return guarded([&] {
        if (!g || !ok) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        auto rep = uesnet::validate(g->g);
        *ok = rep.ok ? 1 : 0;
        if (report) {
            std::string text;
            for (const auto& v : rep.violations) text += v + "\n";
            *report = dup_string(text);
        }
        return UES_OK;
    });
}

uint32_t ues_graph_vertex_count(const ues_graph* g) { return g ? g->g.vertex_count() : 0; }

uint64_t ues_graph_edge_count(const ues_graph* g) { return g ? g->g.edge_count() : 0; }

ues_status ues_graph_component(const ues_graph* g, uint32_t s, uint32_t** members, size_t* count) {
    return guarded([&] {
        if (!g || !members || !count) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        auto comp = uesnet::bfs_component(g->g, s);
        *members = new uint32_t[comp.size()];
        std::memcpy(*members, comp.data(), comp.size() * sizeof(uint32_t));
        *count = comp.size();
        return UES_OK;
    });
}

void ues_graph_free(ues_graph* g) { delete g; }

ues_status ues_sequence_search(uint32_t bound, const char* strategy, uint64_t max_length,
                               uint64_t seed, ues_sequence** out) {
    return guarded([&] {
        if (!strategy || !out) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::SearchStrategy strat;
        if (std::string(strategy) == "random_extend")
            strat = uesnet::SearchStrategy::RandomExtend;
        else if (std::string(strategy) == "incremental_fix")
            strat = uesnet::SearchStrategy::IncrementalFix;
        else
            return fail(UES_ERR_INVALID_ARGUMENT, std::string("unknown strategy: ") + strategy);
        uesnet::SearchBudget budget;
        if (max_length) budget.max_length = max_length;
        auto found = uesnet::find_ues(bound, strat, budget, seed);
        if (!found) return fail(UES_ERR_BUDGET_EXHAUSTED, "sequence search budget exhausted");
        *out = new ues_sequence{std::move(*found)};
        return UES_OK;
    });
}

ues_status ues_sequence_read(const char* path, ues_sequence** out) {
    return guarded([&] {
        if (!path || !out) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        *out = new ues_sequence{uesnet::read_sequence_file(path)};
        return UES_OK;
    });
}

ues_status ues_sequence_write(const ues_sequence* s, const char* path) {
    return guarded([&] {
        if (!s || !path) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::write_sequence_file(path, s->seq);
        return UES_OK;
    });
}

ues_status ues_sequence_verify(const ues_sequence* s, uint32_t bound, int* ok,
                               char** counterexample) {
    return guarded([&] {
        if (!s || !ok) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        auto verdict = uesnet::is_universal(s->seq, bound);
        *ok = verdict.universal ? 1 : 0;
        if (!verdict.universal && counterexample) {
            std::ostringstream out;
            const auto& cex = *verdict.counterexample;
            out << "start dart " << cex.start << " visits only {";
            for (size_t i = 0; i < cex.visited.size(); ++i)
                out << (i ? "," : "") << cex.visited[i];
            out << "} on graph:\n";
            uesnet::write_graph(out, cex.graph);
            *counterexample = dup_string(out.str());
        }
        return UES_OK;
    });
}

uint64_t ues_sequence_length(const ues_sequence* s) { return s ? s->seq.length() : 0; }

uint32_t ues_sequence_rated_size(const ues_sequence* s) { return s ? s->seq.rated_size : 0; }

ues_status ues_sequence_certificate(const ues_sequence* s, char** line) {
    return guarded([&] {
        if (!s || !line) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        *line = dup_string(s->seq.certificate.to_line());
        return UES_OK;
    });
}

void ues_sequence_free(ues_sequence* s) { delete s; }

ues_status ues_network_create(const ues_graph* g, const ues_sequence* seq, uint64_t label_seed,
                              uint64_t namespace_size, ues_network** out) {
    return guarded([&] {
        if (!g || !out) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::CubicizedGraph cub = uesnet::reduce_to_cubic(g->g, label_seed);
        uesnet::ExplorationSequence s;
        if (seq) s = seq->seq;
        *out = new ues_network{uesnet::SimNetwork(std::move(cub), std::move(s), namespace_size)};
        return UES_OK;
    });
}

uint32_t ues_network_gprime_vertex_count(const ues_network* net) {
    return net ? net->net.gprime().vertex_count() : 0;
}

ues_status ues_network_write_gprime(const ues_network* net, const char* graph_path,
                                    const char* mapping_path) {
    return guarded([&] {
        if (!net) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        if (graph_path) uesnet::write_graph_file(graph_path, net->net.gprime());
        if (mapping_path) uesnet::write_mapping_file(mapping_path, net->net.cub());
        return UES_OK;
    });
}

void ues_network_free(ues_network* net) { delete net; }

namespace {

void fill_result(ues_route_result* out, const uesnet::RouteResult& r) {
    if (!out) return;
    out->success = r.status == uesnet::Status::Success ? 1 : 0;
    out->hops = r.hops;
    out->max_header_bits = r.max_header_bits;
}

}  // namespace

ues_status ues_route(const ues_network* net, uint32_t s, uint32_t t, const char* trace_path,
                     ues_route_result* out) {
    return guarded([&] {
        if (!net) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::RunOptions opts;
        opts.record_trace = trace_path != nullptr;
        auto r = uesnet::route(net->net, s, t, opts);
        if (trace_path) uesnet::write_trace_file(trace_path, r);
        fill_result(out, r);
        return UES_OK;
    });
}

ues_status ues_broadcast(const ues_network* net, uint32_t s, const char* trace_path,
                         uint32_t** reached, size_t* reached_count, ues_route_result* out) {
    return guarded([&] {
        if (!net || !reached || !reached_count)
            return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::RunOptions opts;
        opts.record_trace = trace_path != nullptr;
        auto b = uesnet::broadcast(net->net, s, opts);
        if (trace_path) uesnet::write_trace_file(trace_path, b.result);
        *reached = new uint32_t[b.reached.size()];
        std::memcpy(*reached, b.reached.data(), b.reached.size() * sizeof(uint32_t));
        *reached_count = b.reached.size();
        fill_result(out, b.result);
        return UES_OK;
    });
}

ues_status ues_count(const ues_network* net, uint32_t s, uint64_t provider_seed,
                     const char* report_path, ues_count_result* out) {
    return guarded([&] {
        if (!net) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::SequenceProvider provider(provider_seed);
        uesnet::MessageProbeTransport transport(net->net);
        auto rep = uesnet::count_nodes(net->net, s, provider, transport);
        if (report_path) {
            std::ofstream f(report_path);
            if (!f) return fail(UES_ERR_IO, std::string("cannot open for write: ") + report_path);
            uesnet::write_count_report(f, rep);
        }
        if (out) {
            out->gadget_count = rep.gadget_count;
            out->original_count = rep.original_count;
            out->k_final = rep.k_final;
            out->probe_hops = rep.total_hops;
            out->max_header_bits = rep.max_header_bits;
        }
        return UES_OK;
    });
}

ues_status ues_race(const ues_network* net, uint32_t s, uint32_t t, uint64_t ttl,
                    uint64_t quantum, uint64_t seed, const char* report_path,
                    ues_race_result* out) {
    return guarded([&] {
        if (!net) return fail(UES_ERR_INVALID_ARGUMENT, "null argument");
        uesnet::RandomWalkStepper prob(net->net, s, t, ttl, seed);
        auto r = uesnet::race(net->net, s, t, prob, quantum);
        if (report_path) {
            std::ofstream f(report_path);
            if (!f) return fail(UES_ERR_IO, std::string("cannot open for write: ") + report_path);
            f << uesnet::race_report(r);
        }
        if (out) {
            out->winner = static_cast<int>(r.winner);
            out->success = r.status == uesnet::Status::Success ? 1 : 0;
            out->hops_prob = r.hops_prob;
            out->hops_guar = r.hops_guar;
            out->hops_total = r.hops_total;
        }
        return UES_OK;
    });
}

void ues_string_free(char* s) { delete[] s; }

void ues_buffer_free(uint32_t* buf) { delete[] buf; }

}  // extern "C"

// Experiment harness over the uesnet C API: generate graphs, certify
// exploration sequences, and run route/broadcast/count/race experiments
// reproducibly.
//
// Exit codes: 0 success, 1 routing failure (valid outcome), 2 usage or
// config error, 3 certification/verification failure.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uesnet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRoutingFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCertification = 3;

[[noreturn]] void die_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(kExitUsage);
}

void check(ues_status st) {
    if (st == UES_OK) return;
    if (st == UES_ERR_BUDGET_EXHAUSTED || st == UES_ERR_VERIFY_FAILED) {
        std::fprintf(stderr, "error: %s\n", ues_last_error());
        std::exit(kExitCertification);
    }
    die_usage(ues_last_error());
}

// --out wins; otherwise UESNET_OUT_DIR provides a default directory.
std::string resolve_out(const std::string& out, const std::string& default_name) {
    if (!out.empty()) return out;
    const char* dir = std::getenv("UESNET_OUT_DIR");
    if (dir && *dir) return std::string(dir) + "/" + default_name;
    return {};
}

struct GraphHandle {
    ues_graph* g = nullptr;
    ~GraphHandle() { ues_graph_free(g); }
};

struct SequenceHandle {
    ues_sequence* s = nullptr;
    ~SequenceHandle() { ues_sequence_free(s); }
};

struct NetworkHandle {
    ues_network* n = nullptr;
    ~NetworkHandle() { ues_network_free(n); }
};

void load_graph(const std::string& path, GraphHandle& gh) {
    if (path.empty()) die_usage("--graph is required");
    check(ues_graph_read(path.c_str(), &gh.g));
}

void load_sequence(const std::string& path, SequenceHandle& sh) {
    if (path.empty()) die_usage("--sequence is required");
    check(ues_sequence_read(path.c_str(), &sh.s));
}

size_t component_size(const ues_graph* g, uint32_t s) {
    uint32_t* members = nullptr;
    size_t count = 0;
    check(ues_graph_component(g, s, &members, &count));
    ues_buffer_free(members);
    return count;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal-exploration-sequence routing toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    std::string gen_family;
    uint32_t gen_size = 0;
    double gen_param = 0.0;
    uint64_t seed = 0;
    std::string out_path, graph_path, sequence_path;
    gen->add_option("family", gen_family, "path|cycle|complete|erdos_renyi|unit_disk|star")
        ->required();
    gen->add_option("size", gen_size, "vertex count")->required();
    gen->add_option("param", gen_param, "p (erdos_renyi) or radius (unit_disk)");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_path, "output graph file");

    // certify
    auto* certify = app.add_subcommand("certify", "search for or re-verify a certified sequence");
    uint32_t bound = 0;
    uint64_t budget = 0;
    std::string strategy = "random_extend";
    bool reverify = false;
    certify->add_option("--bound", bound, "certification bound (even)");
    certify->add_option("--budget", budget, "max sequence length to try");
    certify->add_option("--strategy", strategy, "random_extend|incremental_fix");
    certify->add_option("--seed", seed, "random seed");
    certify->add_option("--sequence", sequence_path, "existing sequence file (with --reverify)");
    certify->add_flag("--reverify", reverify, "re-verify an existing file instead of searching");
    certify->add_option("--out", out_path, "output sequence file");

    // route / broadcast / count / race
    uint32_t source = 0, target = 0;
    uint64_t ttl = 0, quantum = 1;
    bool oracle = false;
    uint64_t label_seed = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_sequence, bool needs_target) {
        cmd->add_option("--graph", graph_path, "input graph file")->required();
        if (needs_sequence)
            cmd->add_option("--sequence", sequence_path, "certified sequence file")->required();
        cmd->add_option("--source", source, "source vertex")->required();
        if (needs_target) cmd->add_option("--target", target, "target vertex")->required();
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--label-seed", label_seed, "adversarial gadget labeling seed (0 = canonical)");
        cmd->add_flag("--oracle", oracle, "include BFS-oracle component sizes in the summary");
        cmd->add_option("--out", out_path, "trace/report output path");
    };

    auto* route_cmd = app.add_subcommand("route", "route a message from source to target");
    add_common(route_cmd, true, true);
    auto* bcast_cmd = app.add_subcommand("broadcast", "broadcast from source to its component");
    add_common(bcast_cmd, true, false);
    auto* count_cmd = app.add_subcommand("count", "count the component of source by probing");
    add_common(count_cmd, false, false);
    auto* race_cmd = app.add_subcommand("race", "race a random-walk router against the guaranteed one");
    add_common(race_cmd, true, true);
    race_cmd->add_option("--ttl", ttl, "random-walk hop budget (0 = 10 * |V'|^2)");
    race_cmd->add_option("--quantum", quantum, "hops per interleaving round");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (gen->parsed()) {
        GraphHandle gh;
        check(ues_graph_generate(gen_family.c_str(), gen_size, gen_param, seed, &gh.g));
        std::string path = resolve_out(out_path, "graph.txt");
        if (path.empty()) die_usage("gen needs --out (or UESNET_OUT_DIR)");
        check(ues_graph_write(gh.g, path.c_str()));
        std::printf("command,family,size,edges,out\n");
        std::printf("gen,%s,%u,%llu,%s\n", gen_family.c_str(), ues_graph_vertex_count(gh.g),
                    static_cast<unsigned long long>(ues_graph_edge_count(gh.g)), path.c_str());
        return kExitOk;
    }

    if (certify->parsed()) {
        if (reverify) {
            SequenceHandle sh;
            load_sequence(sequence_path, sh);
            uint32_t b = bound ? bound : ues_sequence_rated_size(sh.s);
            int ok = 0;
            char* cex = nullptr;
            check(ues_sequence_verify(sh.s, b, &ok, &cex));
            if (!ok) {
                std::fprintf(stderr, "verification failed at bound %u; counterexample:\n%s", b,
                             cex ? cex : "");
                ues_string_free(cex);
                return kExitCertification;
            }
            std::printf("command,bound,length,verdict\n");
            std::printf("certify,%u,%llu,verified\n", b,
                        static_cast<unsigned long long>(ues_sequence_length(sh.s)));
            return kExitOk;
        }
        if (bound == 0) die_usage("--bound is required");
        SequenceHandle sh;
        check(ues_sequence_search(bound, strategy.c_str(), budget, seed, &sh.s));
        std::string path = resolve_out(out_path, "sequence.txt");
        if (path.empty()) die_usage("certify needs --out (or UESNET_OUT_DIR)");
        check(ues_sequence_write(sh.s, path.c_str()));
        char* cert = nullptr;
        check(ues_sequence_certificate(sh.s, &cert));
        std::printf("command,bound,length,certificate,out\n");
        std::printf("certify,%u,%llu,%s,%s\n", bound,
                    static_cast<unsigned long long>(ues_sequence_length(sh.s)), cert, path.c_str());
        ues_string_free(cert);
        return kExitOk;
    }

    GraphHandle gh;
    load_graph(graph_path, gh);

    if (route_cmd->parsed() || race_cmd->parsed() || bcast_cmd->parsed()) {
        SequenceHandle sh;
        load_sequence(sequence_path, sh);
        NetworkHandle nh;
        check(ues_network_create(gh.g, sh.s, label_seed, 0, &nh.n));

        if (route_cmd->parsed()) {
            std::string trace = resolve_out(out_path, "route_trace.txt");
            ues_route_result r;
            check(ues_route(nh.n, source, target, trace.empty() ? nullptr : trace.c_str(), &r));
            std::printf("command,source,target,status,hops,max_header_bits%s\n",
                        oracle ? ",component_size" : "");
            std::printf("route,%u,%u,%s,%llu,%u", source, target,
                        r.success ? "success" : "failure",
                        static_cast<unsigned long long>(r.hops), r.max_header_bits);
            if (oracle)
                std::printf(",%zu", component_size(gh.g, source));
            std::printf("\n");
            return r.success ? kExitOk : kExitRoutingFailure;
        }
        if (bcast_cmd->parsed()) {
            std::string trace = resolve_out(out_path, "broadcast_trace.txt");
            uint32_t* reached = nullptr;
            size_t reached_count = 0;
            ues_route_result r;
            check(ues_broadcast(nh.n, source, trace.empty() ? nullptr : trace.c_str(), &reached,
                                &reached_count, &r));
            ues_buffer_free(reached);
            std::printf("command,source,reached,hops,max_header_bits%s\n",
                        oracle ? ",component_size" : "");
            std::printf("broadcast,%u,%zu,%llu,%u", source, reached_count,
                        static_cast<unsigned long long>(r.hops), r.max_header_bits);
            if (oracle) std::printf(",%zu", component_size(gh.g, source));
            std::printf("\n");
            return kExitOk;
        }
        // race
        if (ttl == 0) {
            uint64_t n = ues_network_gprime_vertex_count(nh.n);
            ttl = 10 * n * n;
        }
        std::string report = resolve_out(out_path, "race_report.txt");
        ues_race_result r;
        check(ues_race(nh.n, source, target, ttl, quantum, seed,
                       report.empty() ? nullptr : report.c_str(), &r));
        const char* winner = r.winner == 0   ? "probabilistic"
                             : r.winner == 1 ? "guaranteed"
                                             : "guaranteed_failure";
        std::printf("command,source,target,winner,status,hops_prob,hops_guar,hops_total%s\n",
                    oracle ? ",component_size" : "");
        std::printf("race,%u,%u,%s,%s,%llu,%llu,%llu", source, target, winner,
                    r.success ? "success" : "failure",
                    static_cast<unsigned long long>(r.hops_prob),
                    static_cast<unsigned long long>(r.hops_guar),
                    static_cast<unsigned long long>(r.hops_total));
        if (oracle) std::printf(",%zu", component_size(gh.g, source));
        std::printf("\n");
        return r.success ? kExitOk : kExitRoutingFailure;
    }

    // count
    NetworkHandle nh;
    // A 16-bit name space keeps probe headers comfortably inside the
    // O(log n) budget on tiny test graphs.
    check(ues_network_create(gh.g, nullptr, label_seed, 1 << 16, &nh.n));
    std::string report = resolve_out(out_path, "count_report.txt");
    ues_count_result r;
    check(ues_count(nh.n, source, seed, report.empty() ? nullptr : report.c_str(), &r));
    std::printf("command,source,gadget_count,original_count,k_final,probe_hops,max_header_bits%s\n",
                oracle ? ",component_size" : "");
    std::printf("count,%u,%llu,%llu,%u,%llu,%u", source,
                static_cast<unsigned long long>(r.gadget_count),
                static_cast<unsigned long long>(r.original_count), r.k_final,
                static_cast<unsigned long long>(r.probe_hops), r.max_header_bits);
    if (oracle) std::printf(",%zu", component_size(gh.g, source));
    std::printf("\n");
    return kExitOk;
}

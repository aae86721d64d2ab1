/* uesnet: port-labeled-graph toolkit and guaranteed-delivery routing
 * simulator. C API over opaque handles; every function returns a
 * ues_status, with ues_last_error() holding a message for the most
 * recent failure on the calling thread. */

#ifndef UESNET_H
#define UESNET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ues_graph ues_graph;
typedef struct ues_sequence ues_sequence;
typedef struct ues_network ues_network;

typedef enum {
    UES_OK = 0,
    UES_ERR_INVALID_ARGUMENT = 1,
    UES_ERR_IO = 2,
    UES_ERR_VERIFY_FAILED = 3,
    UES_ERR_BUDGET_EXHAUSTED = 4,
    UES_ERR_INTERNAL = 5
} ues_status;

const char* ues_last_error(void);

/* ---- graphs ---- */

/* family: path | cycle | complete | erdos_renyi | unit_disk | star.
 * param carries p (erdos_renyi) or the radius (unit_disk). */
ues_status ues_graph_generate(const char* family, uint32_t size, double param, uint64_t seed,
                              ues_graph** out);
ues_status ues_graph_read(const char* path, ues_graph** out);
ues_status ues_graph_write(const ues_graph* g, const char* path);
ues_status ues_graph_validate(const ues_graph* g, int* ok, char** report /* ues_string_free */);
uint32_t ues_graph_vertex_count(const ues_graph* g);
uint64_t ues_graph_edge_count(const ues_graph* g);
/* Connected component of s (BFS oracle). members is ues_buffer_free()d. */
ues_status ues_graph_component(const ues_graph* g, uint32_t s, uint32_t** members, size_t* count);
void ues_graph_free(ues_graph* g);

/* ---- exploration sequences ---- */

/* strategy: random_extend | incremental_fix. Certified by exhaustive
 * verification at `bound`; UES_ERR_BUDGET_EXHAUSTED when the search gives
 * up. */
ues_status ues_sequence_search(uint32_t bound, const char* strategy, uint64_t max_length,
                               uint64_t seed, ues_sequence** out);
ues_status ues_sequence_read(const char* path, ues_sequence** out);
ues_status ues_sequence_write(const ues_sequence* s, const char* path);
/* Re-runs the exhaustive universality check; on failure *ok = 0 and counterexample
 * (when non-NULL) receives a description. */
ues_status ues_sequence_verify(const ues_sequence* s, uint32_t bound, int* ok,
                               char** counterexample);
uint64_t ues_sequence_length(const ues_sequence* s);
uint32_t ues_sequence_rated_size(const ues_sequence* s);
ues_status ues_sequence_certificate(const ues_sequence* s, char** line);
void ues_sequence_free(ues_sequence* s);

/* ---- networks and protocols ---- */

/* Cubicizes g and attaches the routing sequence (NULL for counting-only
 * networks). label_seed != 0 shuffles gadget port labels.
 * namespace_size 0 picks the smallest namespace covering the network. */
ues_status ues_network_create(const ues_graph* g, const ues_sequence* seq, uint64_t label_seed,
                              uint64_t namespace_size, ues_network** out);
uint32_t ues_network_gprime_vertex_count(const ues_network* net);
ues_status ues_network_write_gprime(const ues_network* net, const char* graph_path,
                                    const char* mapping_path);
void ues_network_free(ues_network* net);

typedef struct {
    int success; /* 1 iff delivered */
    uint64_t hops;
    uint32_t max_header_bits;
} ues_route_result;

/* trace_path NULL skips the trace file. */
ues_status ues_route(const ues_network* net, uint32_t s, uint32_t t, const char* trace_path,
                     ues_route_result* out);

ues_status ues_broadcast(const ues_network* net, uint32_t s, const char* trace_path,
                         uint32_t** reached, size_t* reached_count, ues_route_result* out);

typedef struct {
    uint64_t gadget_count;
    uint64_t original_count;
    uint32_t k_final;
    uint64_t probe_hops;
    uint32_t max_header_bits;
} ues_count_result;

/* Doubling-loop component counting with message probes; provider_seed
 * drives the internal T_{2^k} family. report_path NULL skips the report. */
ues_status ues_count(const ues_network* net, uint32_t s, uint64_t provider_seed,
                     const char* report_path, ues_count_result* out);

typedef struct {
    int winner; /* 0 probabilistic, 1 guaranteed, 2 guaranteed_failure */
    int success;
    uint64_t hops_prob;
    uint64_t hops_guar;
    uint64_t hops_total;
} ues_race_result;

ues_status ues_race(const ues_network* net, uint32_t s, uint32_t t, uint64_t ttl,
                    uint64_t quantum, uint64_t seed, const char* report_path,
                    ues_race_result* out);

void ues_string_free(char* s);
void ues_buffer_free(uint32_t* buf);

#ifdef __cplusplus
}
#endif

#endif /* UESNET_H */

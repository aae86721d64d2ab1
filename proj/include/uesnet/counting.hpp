#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "uesnet/exploration.hpp"
#include "uesnet/route.hpp"

namespace uesnet {

// Component-size discovery: Retrieve / RetrieveNeighbor probe
// sub-protocols and the doubling loop. Probes are real protocol messages
// by default; a graph-level transport with the same interface serves as
// the test oracle.

struct ProbeHeader {
    NodeId src = 0;
    std::uint8_t mode = 0;  // 0 = retrieve, 1..3 = retrieve_neighbor j
    std::uint64_t target = 0;
    std::uint64_t index = 1;
    Direction dir = Direction::Forward;
    bool has_answer = false;
    NodeId answer = 0;
    bool detour = false;          // mid neighbor detour
    std::uint8_t entry_port = 0;  // entry port at v_target, for the detour return
    bool operator==(const ProbeHeader&) const = default;
};

struct ProbeCodec {
    std::uint64_t namespace_size = 2;
    std::uint64_t sequence_length = 1;

    std::uint32_t id_bits() const;
    std::uint32_t index_bits() const;
    std::uint32_t budget_bits() const;  // same budget formula as MessageHeader

    std::uint32_t encoded_bits(const ProbeHeader& h) const;
    std::vector<std::uint8_t> encode(const ProbeHeader& h) const;
    ProbeHeader decode(const std::vector<std::uint8_t>& bits, std::uint32_t bit_count) const;
};

struct ProbeReply {
    NodeId answer = 0;  // gadget-vertex identifier
    std::uint64_t hops = 0;
    std::uint32_t max_header_bits = 0;
};

class ProbeTransport {
public:
    virtual ~ProbeTransport() = default;
    // v_i: the vertex on the i-th step of seq from s. 1 <= i <= L.
    virtual ProbeReply retrieve(NodeId s, const ExplorationSequence& seq, std::uint64_t i) = 0;
    // j-th neighbor of v_i, j in {1,2,3}; the walk detours and returns via v_i.
    virtual ProbeReply retrieve_neighbor(NodeId s, const ExplorationSequence& seq, std::uint64_t i,
                                         std::uint32_t j) = 0;
};

// Probes as messages through the simulator: hops = 2i (retrieve) or
// 2i + 2 (retrieve_neighbor), header enforced by ProbeCodec.
class MessageProbeTransport : public ProbeTransport {
public:
    explicit MessageProbeTransport(const SimNetwork& net) : net_(net) {}
    ProbeReply retrieve(NodeId s, const ExplorationSequence& seq, std::uint64_t i) override;
    ProbeReply retrieve_neighbor(NodeId s, const ExplorationSequence& seq, std::uint64_t i,
                                 std::uint32_t j) override;

private:
    const SimNetwork& net_;
};

// Graph-level shortcut with identical answers and hop accounting; the
// oracle backend.
class DirectProbeTransport : public ProbeTransport {
public:
    explicit DirectProbeTransport(const SimNetwork& net) : net_(net) {}
    ProbeReply retrieve(NodeId s, const ExplorationSequence& seq, std::uint64_t i) override;
    ProbeReply retrieve_neighbor(NodeId s, const ExplorationSequence& seq, std::uint64_t i,
                                 std::uint32_t j) override;

private:
    const PortLabeledGraph& g() const { return net_.gprime(); }
    const SimNetwork& net_;
    // walk cache, keyed by (sequence identity, start vertex)
    const ExplorationSequence* cached_seq_ = nullptr;
    NodeId cached_s_ = 0;
    std::vector<DartId> cached_walk_;
    void ensure_walk(NodeId s, const ExplorationSequence& seq);
};

struct CountReport {
    std::uint64_t gadget_count = 0;    // distinct gadget vertices in C_s of G'
    std::uint64_t original_count = 0;  // distinct owners
    std::uint32_t k_final = 0;
    std::uint64_t total_hops = 0;
    std::uint32_t max_header_bits = 0;
    struct PerK {
        std::uint32_t k;
        std::uint64_t sequence_length;
        bool closed;
        std::uint64_t hops;
    };
    std::vector<PerK> per_k;
};

// Component counting: double k until the visited set of T_{2^k} is
// closed under adjacency, then count distinct visited vertices by the
// pairwise scan. Throws when the provider fails or the loop cannot
// converge.
CountReport count_nodes(const SimNetwork& net, NodeId s, SequenceProvider& provider,
                        ProbeTransport& transport);

std::uint64_t count_original_nodes(const SimNetwork& net, NodeId s, SequenceProvider& provider,
                                   ProbeTransport& transport);

void write_count_report(std::ostream& out, const CountReport& rep);

}  // namespace uesnet

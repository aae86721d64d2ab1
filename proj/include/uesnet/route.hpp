#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uesnet/cubicize.hpp"
#include "uesnet/exploration.hpp"
#include "uesnet/graph.hpp"

namespace uesnet {

// The stateless routing protocol: all state rides in the header, the
// per-node handler is a pure function, and one message is in flight per
// invocation.

enum class Direction : std::uint8_t { Forward = 0, Back = 1 };
enum class Status : std::uint8_t { Pending = 0, Success = 1, Failure = 2 };

struct MessageHeader {
    NodeId src = 0;
    NodeId dst = 0;
    Direction dir = Direction::Forward;
    Status status = Status::Pending;
    std::uint64_t index = 1;  // next sequence element to consume, in [1, L+1]
    bool operator==(const MessageHeader&) const = default;
};

// Bit widths are derived from the namespace and sequence length; every
// encode asserts the O(log n) budget
//   4*ceil(log2(namespace)) + ceil(log2(L)) + 4.
struct HeaderCodec {
    std::uint64_t namespace_size = 2;
    std::uint64_t sequence_length = 1;

    std::uint32_t id_bits() const;
    std::uint32_t index_bits() const;
    std::uint32_t budget_bits() const;

    std::uint32_t encoded_bits(const MessageHeader& h) const;
    std::vector<std::uint8_t> encode(const MessageHeader& h) const;  // throws on overflow/budget
    MessageHeader decode(const std::vector<std::uint8_t>& bits, std::uint32_t bit_count) const;
};

class SimNetwork {
public:
    SimNetwork(CubicizedGraph cub, ExplorationSequence seq,
               std::uint64_t namespace_size = 0);

    const CubicizedGraph& cub() const { return cub_; }
    const PortLabeledGraph& gprime() const { return cub_.gprime; }
    const ExplorationSequence& sequence() const { return seq_; }
    std::uint64_t namespace_size() const { return namespace_size_; }
    NodeId original_vertex_count() const { return static_cast<NodeId>(cub_.gadget.size()); }

    // Canonical injection point: e_0 positions the walk at the first
    // gadget vertex of s with entry port 0.
    DartId start_dart(NodeId s) const;

    // Byte snapshot of all node-local structure; statelessness means the
    // snapshot is bit-identical before and after every handled message.
    std::string snapshot_node_state() const;

private:
    CubicizedGraph cub_;
    ExplorationSequence seq_;
    std::uint64_t namespace_size_;
};

// What a node may see while handling a message: its own darts, its owner
// name, and read-only access to the sequence.
struct VertexView {
    const PortLabeledGraph& g;
    NodeId vertex;
    NodeId owner;
    const ExplorationSequence& seq;
};

struct HandleOutcome {
    bool terminal = false;
    Status status = Status::Pending;  // terminal only
    DartId send_on = kNoDart;
    MessageHeader header;
};

// One protocol step. arrived_on is the dart just traversed (tail side);
// the handling vertex is head(arrived_on). broadcast_mode drops the
// destination guard so the walk always runs the full sequence.
HandleOutcome handle_message(const VertexView& local, DartId arrived_on, const MessageHeader& h,
                             bool broadcast_mode = false);

struct HopRecord {
    std::uint64_t hop;        // 1-based
    std::uint64_t seq_index;  // header index after the hop
    NodeId from, to;
    std::uint32_t from_port, to_port;
    Direction dir;
    Status status;
};

struct RouteResult {
    Status status = Status::Failure;
    std::uint64_t hops = 0;
    std::uint32_t max_header_bits = 0;
    std::vector<HopRecord> trace;
    std::string note;  // e.g. the s == t short circuit
};

struct RunOptions {
    bool record_trace = true;
    bool audit_statelessness = false;  // snapshot node state around every handle
    // Per-delivery callback for broadcast (owner of each gadget vertex on
    // first visit).
    std::function<void(NodeId gadget_vertex)> on_visit;
};

// Guaranteed routing over the cubicized network. s must be an original
// vertex; t only needs to be a name in the namespace.
RouteResult route(const SimNetwork& net, NodeId s, NodeId t, const RunOptions& opts = {});

struct BroadcastResult {
    std::vector<NodeId> reached;  // original vertices, sorted
    RouteResult result;
};

// Full-sequence walk delivering at first visit of every gadget vertex,
// then an exact backtrack to s as completion confirmation.
BroadcastResult broadcast(const SimNetwork& net, NodeId s, const RunOptions& opts = {});

// Trace format: one line per hop.
void write_trace(std::ostream& out, const RouteResult& r);
void write_trace_file(const std::string& path, const RouteResult& r);

}  // namespace uesnet

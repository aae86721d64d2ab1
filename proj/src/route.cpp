#include "uesnet/route.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uesnet {

namespace {

std::uint32_t ceil_log2(std::uint64_t x) {
    if (x <= 1) return 0;
    return std::bit_width(x - 1);
}

const char* dir_name(Direction d) { return d == Direction::Forward ? "forward" : "back"; }

const char* status_name(Status s) {
    switch (s) {
        case Status::Pending: return "pending";
        case Status::Success: return "success";
        case Status::Failure: return "failure";
    }
    return "?";
}

// LSB-first bit packing shared by the header codecs.
struct BitWriter {
    std::vector<std::uint8_t> bytes;
    std::uint32_t bits = 0;
    void put(std::uint64_t value, std::uint32_t width) {
        for (std::uint32_t i = 0; i < width; ++i, ++bits) {
            if (bits % 8 == 0) bytes.push_back(0);
            if ((value >> i) & 1) bytes.back() |= static_cast<std::uint8_t>(1u << (bits % 8));
        }
    }
};

struct BitReader {
    const std::vector<std::uint8_t>& bytes;
    std::uint32_t pos = 0;
    std::uint64_t get(std::uint32_t width) {
        std::uint64_t v = 0;
        for (std::uint32_t i = 0; i < width; ++i, ++pos) {
            if ((bytes[pos / 8] >> (pos % 8)) & 1) v |= 1ull << i;
        }
        return v;
    }
};

}  // namespace

std::uint32_t HeaderCodec::id_bits() const {
    return std::max<std::uint32_t>(1, ceil_log2(namespace_size));
}

std::uint32_t HeaderCodec::index_bits() const {
    // index ranges over [1, L+1]
    return std::max<std::uint32_t>(1, ceil_log2(sequence_length + 2));
}

std::uint32_t HeaderCodec::budget_bits() const {
    return 4 * id_bits() + ceil_log2(std::max<std::uint64_t>(2, sequence_length)) + 4;
}

std::uint32_t HeaderCodec::encoded_bits(const MessageHeader&) const {
    return 2 * id_bits() + 1 + 2 + index_bits();
}

std::vector<std::uint8_t> HeaderCodec::encode(const MessageHeader& h) const {
    if (h.src >= namespace_size || h.dst >= namespace_size)
        throw std::invalid_argument("header field overflow: node name outside namespace");
    if (h.index < 1 || h.index > sequence_length + 1)
        throw std::invalid_argument("header field overflow: index outside [1, L+1]");
    if (h.status != Status::Pending && h.dir != Direction::Back)
        throw std::invalid_argument("header invariant: status set implies dir = back");
    BitWriter w;
    w.put(h.src, id_bits());
    w.put(h.dst, id_bits());
    w.put(static_cast<std::uint64_t>(h.dir), 1);
    w.put(static_cast<std::uint64_t>(h.status), 2);
    w.put(h.index - 1, index_bits());
    if (w.bits > budget_bits())
        throw std::logic_error("header codec exceeded its bit budget");
    return w.bytes;
}

MessageHeader HeaderCodec::decode(const std::vector<std::uint8_t>& bits,
                                  std::uint32_t bit_count) const {
    MessageHeader h;
    if (bit_count != encoded_bits(h)) throw std::invalid_argument("header bit count mismatch");
    BitReader r{bits};
    h.src = static_cast<NodeId>(r.get(id_bits()));
    h.dst = static_cast<NodeId>(r.get(id_bits()));
    h.dir = static_cast<Direction>(r.get(1));
    h.status = static_cast<Status>(r.get(2));
    h.index = r.get(index_bits()) + 1;
    return h;
}

SimNetwork::SimNetwork(CubicizedGraph cub, ExplorationSequence seq, std::uint64_t namespace_size)
    : cub_(std::move(cub)), seq_(std::move(seq)) {
    namespace_size_ =
        namespace_size ? namespace_size
                       : std::max<std::uint64_t>(cub_.gadget.size(), cub_.gprime.vertex_count());
}

DartId SimNetwork::start_dart(NodeId s) const {
    if (s >= cub_.gadget.size()) throw std::invalid_argument("unknown source vertex");
    NodeId gs = cub_.gadget[s][0];
    return cub_.gprime.pair(cub_.gprime.dart_at(gs, 0));
}

std::string SimNetwork::snapshot_node_state() const {
    std::ostringstream out;
    const PortLabeledGraph& g = cub_.gprime;
    for (NodeId v = 0; v < g.vertex_count(); ++v) {
        out << v << ':' << cub_.owner[v];
        for (std::uint32_t p = 0; p < g.degree(v); ++p) out << ',' << g.pair(g.dart_at(v, p));
        out << ';';
    }
    return out.str();
}

HandleOutcome handle_message(const VertexView& local, DartId arrived_on, const MessageHeader& h,
                             bool broadcast_mode) {
    const std::uint64_t L = local.seq.length();
    if (h.index < 1 || h.index > L + 1)
        throw std::runtime_error("protocol corruption: header index outside [1, L+1]");

    // Backtrack completion: the back walk arrives at v_i carrying index
    // i + 2, so index 2 pins the arrival to v_0 inside the source gadget.
    if (h.dir == Direction::Back && local.owner == h.src && h.index == 2)
        return HandleOutcome{true, h.status, kNoDart, h};

    if (!broadcast_mode && h.dir == Direction::Forward && local.owner == h.dst) {
        MessageHeader out = h;
        out.dir = Direction::Back;
        out.status = Status::Success;
        return HandleOutcome{false, Status::Pending, local.g.pair(arrived_on), out};
    }

    if (h.dir == Direction::Forward && h.index > L) {
        MessageHeader out = h;
        out.dir = Direction::Back;
        out.status = broadcast_mode ? Status::Success : Status::Failure;
        return HandleOutcome{false, Status::Pending, local.g.pair(arrived_on), out};
    }

    MessageHeader out = h;
    if (h.dir == Direction::Forward) {
        DartId send = next_dart(local.g, arrived_on, local.seq.at(h.index));
        out.index = h.index + 1;
        return HandleOutcome{false, Status::Pending, send, out};
    }
    if (h.index < 2)
        throw std::runtime_error("protocol corruption: back step with no element to unconsume");
    DartId send = prev_dart(local.g, local.g.pair(arrived_on), local.seq.at(h.index - 1));
    out.index = h.index - 1;
    return HandleOutcome{false, Status::Pending, send, out};
}

namespace {

RouteResult run_protocol(const SimNetwork& net, NodeId s, MessageHeader header, bool broadcast_mode,
                         const RunOptions& opts) {
    const PortLabeledGraph& g = net.gprime();
    const ExplorationSequence& seq = net.sequence();
    HeaderCodec codec{net.namespace_size(), seq.length()};

    if (seq.length() == 0) throw std::invalid_argument("empty exploration sequence");

    RouteResult r;
    codec.encode(header);
    r.max_header_bits = codec.encoded_bits(header);

    DartId cur = net.start_dart(s);
    if (opts.on_visit) {
        opts.on_visit(g.tail(cur));
        opts.on_visit(g.head(cur));
    }

    const std::uint64_t hop_cap = 2 * seq.length() + 4;
    std::string before;
    for (;;) {
        NodeId v = g.head(cur);
        VertexView view{g, v, net.cub().owner[v], seq};
        if (opts.audit_statelessness) before = net.snapshot_node_state();
        HandleOutcome out = handle_message(view, cur, header, broadcast_mode);
        if (opts.audit_statelessness && net.snapshot_node_state() != before)
            throw std::logic_error("statelessness violated: node state changed under handling");
        if (out.terminal) {
            r.status = out.status;
            return r;
        }
        codec.encode(out.header);  // budget enforcement on every hop
        r.max_header_bits = std::max(r.max_header_bits, codec.encoded_bits(out.header));
        NodeId to = g.head(out.send_on);
        ++r.hops;
        if (opts.record_trace)
            r.trace.push_back(HopRecord{r.hops, out.header.index, v, to, g.port_of(out.send_on),
                                        g.port_of(g.pair(out.send_on)), out.header.dir,
                                        out.header.status});
        if (opts.on_visit && out.header.dir == Direction::Forward) opts.on_visit(to);
        cur = out.send_on;
        header = out.header;
        if (r.hops > hop_cap) throw std::runtime_error("protocol corruption: hop bound exceeded");
    }
}

}  // namespace

RouteResult route(const SimNetwork& net, NodeId s, NodeId t, const RunOptions& opts) {
    if (s >= net.original_vertex_count()) throw std::invalid_argument("unknown source vertex");
    if (t >= net.namespace_size()) throw std::invalid_argument("target outside namespace");
    if (s == t) {
        RouteResult r;
        r.status = Status::Success;
        r.hops = 0;
        r.note = "s == t short-circuit at injection";
        HeaderCodec codec{net.namespace_size(), net.sequence().length()};
        r.max_header_bits = codec.encoded_bits(MessageHeader{s, t});
        return r;
    }
    MessageHeader h{s, t, Direction::Forward, Status::Pending, 1};
    return run_protocol(net, s, h, /*broadcast_mode=*/false, opts);
}

BroadcastResult broadcast(const SimNetwork& net, NodeId s, const RunOptions& opts) {
    if (s >= net.original_vertex_count()) throw std::invalid_argument("unknown source vertex");
    std::vector<bool> seen(net.gprime().vertex_count(), false);
    RunOptions inner = opts;
    inner.on_visit = [&](NodeId gv) {
        if (!seen[gv]) {
            seen[gv] = true;
            if (opts.on_visit) opts.on_visit(gv);
        }
    };
    MessageHeader h{s, s, Direction::Forward, Status::Pending, 1};
    BroadcastResult b;
    b.result = run_protocol(net, s, h, /*broadcast_mode=*/true, inner);
    std::vector<bool> owners_seen(net.original_vertex_count(), false);
    for (NodeId gv = 0; gv < seen.size(); ++gv)
        if (seen[gv]) owners_seen[net.cub().owner[gv]] = true;
    for (NodeId v = 0; v < owners_seen.size(); ++v)
        if (owners_seen[v]) b.reached.push_back(v);
    return b;
}

void write_trace(std::ostream& out, const RouteResult& r) {
    out << "# status=" << status_name(r.status) << " hops=" << r.hops
        << " max_header_bits=" << r.max_header_bits;
    if (!r.note.empty()) out << " note=\"" << r.note << "\"";
    out << '\n';
    for (const HopRecord& h : r.trace)
        out << h.hop << ' ' << h.seq_index << ' ' << h.from << ' ' << h.from_port << ' ' << h.to
            << ' ' << h.to_port << ' ' << dir_name(h.dir) << ' ' << status_name(h.status) << '\n';
}

void write_trace_file(const std::string& path, const RouteResult& r) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    write_trace(f, r);
}

}  // namespace uesnet

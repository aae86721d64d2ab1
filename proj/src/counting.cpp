#include "uesnet/counting.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

namespace uesnet {

namespace {

std::uint32_t ceil_log2(std::uint64_t x) {
    if (x <= 1) return 0;
    return std::bit_width(x - 1);
}

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
        for (std::uint32_t i = 0; i < width; ++i, ++pos)
            if ((bytes[pos / 8] >> (pos % 8)) & 1) v |= 1ull << i;
        return v;
    }
};

}  // namespace

std::uint32_t ProbeCodec::id_bits() const {
    return std::max<std::uint32_t>(1, ceil_log2(namespace_size));
}

std::uint32_t ProbeCodec::index_bits() const {
    return std::max<std::uint32_t>(1, ceil_log2(sequence_length + 2));
}

std::uint32_t ProbeCodec::budget_bits() const {
    return 4 * id_bits() + ceil_log2(std::max<std::uint64_t>(2, sequence_length)) + 4;
}

std::uint32_t ProbeCodec::encoded_bits(const ProbeHeader& h) const {
    // src, mode(2), dir(1), detour(1), entry_port(2), has_answer(1),
    // optional answer, target, index
    return id_bits() + 7 + (h.has_answer ? id_bits() : 0) + 2 * index_bits();
}

std::vector<std::uint8_t> ProbeCodec::encode(const ProbeHeader& h) const {
    if (h.src >= namespace_size || (h.has_answer && h.answer >= namespace_size))
        throw std::invalid_argument("probe header overflow: node name outside namespace");
    if (h.index < 1 || h.index > sequence_length + 1 || h.target < 1 ||
        h.target > sequence_length)
        throw std::invalid_argument("probe header overflow: index outside range");
    BitWriter w;
    w.put(h.src, id_bits());
    w.put(h.mode, 2);
    w.put(static_cast<std::uint64_t>(h.dir), 1);
    w.put(h.detour ? 1 : 0, 1);
    w.put(h.entry_port, 2);
    w.put(h.has_answer ? 1 : 0, 1);
    if (h.has_answer) w.put(h.answer, id_bits());
    w.put(h.target - 1, index_bits());
    w.put(h.index - 1, index_bits());
    if (w.bits > budget_bits())
        throw std::logic_error("probe codec exceeded its bit budget");
    return w.bytes;
}

ProbeHeader ProbeCodec::decode(const std::vector<std::uint8_t>& bits,
                               std::uint32_t bit_count) const {
    ProbeHeader h;
    BitReader r{bits};
    h.src = static_cast<NodeId>(r.get(id_bits()));
    h.mode = static_cast<std::uint8_t>(r.get(2));
    h.dir = static_cast<Direction>(r.get(1));
    h.detour = r.get(1) != 0;
    h.entry_port = static_cast<std::uint8_t>(r.get(2));
    h.has_answer = r.get(1) != 0;
    if (h.has_answer) h.answer = static_cast<NodeId>(r.get(id_bits()));
    h.target = r.get(index_bits()) + 1;
    h.index = r.get(index_bits()) + 1;
    if (bit_count != encoded_bits(h)) throw std::invalid_argument("probe header bit count mismatch");
    return h;
}

namespace {

struct ProbeOutcome {
    bool terminal = false;
    DartId send_on = kNoDart;
    ProbeHeader header;
};

// The probe handler: forward along the sequence to v_target, capture the
// answer (detouring over port j-1 for retrieve_neighbor), then backtrack.
ProbeOutcome handle_probe(const VertexView& local, DartId arrived_on, const ProbeHeader& h) {
    const PortLabeledGraph& g = local.g;
    const std::uint64_t L = local.seq.length();
    if (h.index < 1 || h.index > L + 1)
        throw std::runtime_error("probe corruption: header index outside [1, L+1]");

    // Backtrack arrivals carry index i + 2 at v_i; index 2 is v_0.
    if (h.dir == Direction::Back && local.owner == h.src && h.index == 2)
        return ProbeOutcome{true, kNoDart, h};

    // Neighbor detour legs take priority; both endpoints see
    // index == target + 1.
    if (h.detour && !h.has_answer) {
        ProbeHeader out = h;
        out.has_answer = true;
        out.answer = local.vertex;
        return ProbeOutcome{false, g.pair(arrived_on), out};
    }
    if (h.detour && h.has_answer) {
        ProbeHeader out = h;
        out.detour = false;
        out.dir = Direction::Back;
        // Resume the backtrack over the edge the forward walk arrived on.
        return ProbeOutcome{false, g.dart_at(local.vertex, out.entry_port), out};
    }

    if (h.dir == Direction::Forward && h.index == h.target + 1) {
        ProbeHeader out = h;
        if (h.mode == 0) {
            out.has_answer = true;
            out.answer = local.vertex;
            out.dir = Direction::Back;
            return ProbeOutcome{false, g.pair(arrived_on), out};
        }
        out.detour = true;
        out.entry_port = static_cast<std::uint8_t>(g.port_of(g.pair(arrived_on)));
        return ProbeOutcome{false, g.dart_at(local.vertex, h.mode - 1), out};
    }

    ProbeHeader out = h;
    if (h.dir == Direction::Forward) {
        DartId send = next_dart(g, arrived_on, local.seq.at(h.index));
        out.index = h.index + 1;
        return ProbeOutcome{false, send, out};
    }
    if (h.index < 2) throw std::runtime_error("probe corruption: back step with no element left");
    DartId send = prev_dart(g, g.pair(arrived_on), local.seq.at(h.index - 1));
    out.index = h.index - 1;
    return ProbeOutcome{false, send, out};
}

ProbeReply run_probe(const SimNetwork& net, NodeId s, const ExplorationSequence& seq,
                     std::uint64_t i, std::uint32_t j) {
    if (i < 1 || i > seq.length()) throw std::invalid_argument("probe index out of range");
    const PortLabeledGraph& g = net.gprime();
    ProbeCodec codec{net.namespace_size(), seq.length()};

    ProbeHeader h;
    h.src = s;
    h.mode = static_cast<std::uint8_t>(j);
    h.target = i;
    ProbeReply reply;
    codec.encode(h);
    reply.max_header_bits = codec.encoded_bits(h);

    DartId cur = net.start_dart(s);
    const std::uint64_t hop_cap = 2 * seq.length() + 8;
    for (;;) {
        NodeId v = g.head(cur);
        VertexView view{g, v, net.cub().owner[v], seq};
        ProbeOutcome out = handle_probe(view, cur, h);
        if (out.terminal) {
            if (!out.header.has_answer) throw std::runtime_error("probe returned without answer");
            reply.answer = out.header.answer;
            return reply;
        }
        codec.encode(out.header);
        reply.max_header_bits = std::max(reply.max_header_bits, codec.encoded_bits(out.header));
        cur = out.send_on;
        h = out.header;
        ++reply.hops;
        if (reply.hops > hop_cap) throw std::runtime_error("probe corruption: hop bound exceeded");
    }
}

}  // namespace

ProbeReply MessageProbeTransport::retrieve(NodeId s, const ExplorationSequence& seq,
                                           std::uint64_t i) {
    return run_probe(net_, s, seq, i, 0);
}

ProbeReply MessageProbeTransport::retrieve_neighbor(NodeId s, const ExplorationSequence& seq,
                                                    std::uint64_t i, std::uint32_t j) {
    if (j < 1 || j > 3) throw std::invalid_argument("neighbor index must be in {1,2,3}");
    return run_probe(net_, s, seq, i, j);
}

void DirectProbeTransport::ensure_walk(NodeId s, const ExplorationSequence& seq) {
    if (cached_seq_ == &seq && cached_s_ == s && !cached_walk_.empty()) return;
    cached_seq_ = &seq;
    cached_s_ = s;
    cached_walk_.clear();
    cached_walk_.reserve(seq.length() + 1);
    DartId cur = net_.start_dart(s);
    cached_walk_.push_back(cur);
    for (std::uint64_t i = 1; i <= seq.length(); ++i) {
        cur = next_dart(g(), cur, seq.at(i));
        cached_walk_.push_back(cur);
    }
}

ProbeReply DirectProbeTransport::retrieve(NodeId s, const ExplorationSequence& seq,
                                          std::uint64_t i) {
    if (i < 1 || i > seq.length()) throw std::invalid_argument("probe index out of range");
    ensure_walk(s, seq);
    return ProbeReply{g().head(cached_walk_[i]), 2 * i, 0};
}

ProbeReply DirectProbeTransport::retrieve_neighbor(NodeId s, const ExplorationSequence& seq,
                                                   std::uint64_t i, std::uint32_t j) {
    if (i < 1 || i > seq.length()) throw std::invalid_argument("probe index out of range");
    if (j < 1 || j > 3) throw std::invalid_argument("neighbor index must be in {1,2,3}");
    ensure_walk(s, seq);
    NodeId vi = g().head(cached_walk_[i]);
    return ProbeReply{g().head(g().dart_at(vi, j - 1)), 2 * i + 2, 0};
}

namespace {

struct CountEngine {
    const SimNetwork& net;
    SequenceProvider& provider;
    ProbeTransport& transport;
    CountReport report;

    void accumulate(const ProbeReply& r, std::uint64_t& hops) {
        hops += r.hops;
        report.max_header_bits = std::max(report.max_header_bits, r.max_header_bits);
    }

    void run(NodeId s) {
        const std::uint32_t k_cap =
            ceil_log2(4ull * net.gprime().vertex_count()) + 2;
        std::uint32_t k = 0;
        bool new_node_discovered;
        const ExplorationSequence* seq = nullptr;
        do {
            ++k;
            if (k > k_cap) throw std::runtime_error("counting did not converge");
            seq = &provider.get(k);
            const std::uint64_t L = seq->length();
            std::uint64_t hops_k = 0;
            new_node_discovered = false;
            for (std::uint64_t i = 1; i <= L && !new_node_discovered; ++i) {
                for (std::uint32_t j = 1; j <= 3; ++j) {
                    ProbeReply u = transport.retrieve_neighbor(s, *seq, i, j);
                    accumulate(u, hops_k);
                    bool u_is_new = true;
                    for (std::uint64_t l = 1; l <= L; ++l) {
                        ProbeReply v = transport.retrieve(s, *seq, l);
                        accumulate(v, hops_k);
                        if (v.answer == u.answer) {
                            u_is_new = false;
                            break;
                        }
                    }
                    if (u_is_new) {
                        new_node_discovered = true;  // skip to "while"
                        break;
                    }
                }
            }
            report.per_k.push_back({k, L, !new_node_discovered, hops_k});
            report.total_hops += hops_k;
        } while (new_node_discovered);
        report.k_final = k;

        // Pairwise-scan dedup over the closing walk.
        const std::uint64_t L = seq->length();
        std::uint64_t hops_count = 0;
        std::vector<bool> owner_seen(net.original_vertex_count(), false);
        for (std::uint64_t i = 1; i <= L; ++i) {
            ProbeReply v_new = transport.retrieve(s, *seq, i);
            accumulate(v_new, hops_count);
            bool newnode = true;
            for (std::uint64_t jj = 1; jj < i; ++jj) {
                ProbeReply v_old = transport.retrieve(s, *seq, jj);
                accumulate(v_old, hops_count);
                if (v_old.answer == v_new.answer) {
                    newnode = false;
                    break;
                }
            }
            if (newnode) {
                ++report.gadget_count;
                NodeId owner = net.cub().owner[v_new.answer];
                if (!owner_seen[owner]) {
                    owner_seen[owner] = true;
                    ++report.original_count;
                }
            }
        }
        report.total_hops += hops_count;
    }
};

}  // namespace

CountReport count_nodes(const SimNetwork& net, NodeId s, SequenceProvider& provider,
                        ProbeTransport& transport) {
    if (s >= net.original_vertex_count()) throw std::invalid_argument("unknown source vertex");
    CountEngine engine{net, provider, transport, {}};
    engine.run(s);
    return engine.report;
}

std::uint64_t count_original_nodes(const SimNetwork& net, NodeId s, SequenceProvider& provider,
                                   ProbeTransport& transport) {
    return count_nodes(net, s, provider, transport).original_count;
}

void write_count_report(std::ostream& out, const CountReport& rep) {
    out << "gadget_count " << rep.gadget_count << '\n';
    out << "original_count " << rep.original_count << '\n';
    out << "k_final " << rep.k_final << '\n';
    out << "total_hops " << rep.total_hops << '\n';
    out << "max_header_bits " << rep.max_header_bits << '\n';
    for (const auto& pk : rep.per_k)
        out << "k " << pk.k << " length " << pk.sequence_length << " closed "
            << (pk.closed ? 1 : 0) << " hops " << pk.hops << '\n';
}

}  // namespace uesnet

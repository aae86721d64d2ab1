#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "uesnet/route.hpp"

using namespace uesnet;

namespace {

// One exhaustively certified bound-4 sequence, shared across the file
// (the search is the expensive part).
const ExplorationSequence& bound4_sequence() {
    static ExplorationSequence seq = [] {
        SearchBudget budget;
        budget.max_length = 4096;
        auto found = find_ues(4, SearchStrategy::RandomExtend, budget, 17);
        REQUIRE(found.has_value());
        return *found;
    }();
    return seq;
}

SimNetwork make_net(const PortLabeledGraph& g, std::uint64_t label_seed = 0,
                    std::uint64_t ns = 0) {
    return SimNetwork(reduce_to_cubic(g, label_seed), bound4_sequence(), ns);
}

// First walk step index that reaches any gadget vertex of t.
std::uint64_t first_hit(const SimNetwork& net, NodeId s, NodeId t) {
    const auto& lifted = lift_target(net.cub(), t);
    auto walk = trace_walk(net.gprime(), net.start_dart(s), net.sequence(),
                           net.sequence().length());
    for (const auto& e : walk)
        if (std::find(lifted.begin(), lifted.end(), e.visited) != lifted.end()) return e.index;
    return 0;
}

}  // namespace

TEST_CASE("header codec round trips and stays in budget") {
    HeaderCodec codec{1000, 500};
    CHECK(codec.budget_bits() == 4 * 10 + 9 + 4);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        MessageHeader h;
        h.src = static_cast<NodeId>(rng.below(1000));
        h.dst = static_cast<NodeId>(rng.below(1000));
        h.status = static_cast<Status>(rng.below(3));
        // the codec enforces: a resolved status only travels backwards
        h.dir = h.status == Status::Pending && rng.below(2) ? Direction::Forward : Direction::Back;
        h.index = 1 + rng.below(500);
        auto bits = codec.encode(h);
        CHECK(codec.encoded_bits(h) <= codec.budget_bits());
        CHECK(codec.decode(bits, codec.encoded_bits(h)) == h);
    }
    MessageHeader oob;
    oob.src = 1000;  // outside the namespace
    CHECK_THROWS(codec.encode(oob));
}

TEST_CASE("route: s == t short circuit") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    auto r = route(net, 1, 1);
    CHECK(r.status == Status::Success);
    CHECK(r.hops == 0);
}

TEST_CASE("route succeeds on a path whose reduction has 4 vertices") {
    auto g = generate({GraphFamily::Path, 3}, 1);  // gadgets: 1 + 2 + 1
    auto net = make_net(g);
    REQUIRE(net.gprime().vertex_count() == 4);
    for (NodeId s = 0; s < 3; ++s)
        for (NodeId t = 0; t < 3; ++t) {
            if (s == t) continue;
            auto r = route(net, s, t);
            CAPTURE(s);
            CAPTURE(t);
            CHECK(r.status == Status::Success);
            CHECK(r.hops % 2 == 0);
            CHECK(r.hops == 2 * first_hit(net, s, t));
            CHECK(r.hops <= 2 * net.sequence().length());
            CHECK(r.trace.size() == r.hops);
            // first hop leaves the injection gadget: entry port 0 plus t_1
            CHECK(r.trace[0].from_port ==
                  net.sequence().at(1) % net.gprime().degree(r.trace[0].from));
            CHECK(net.cub().owner[r.trace[0].from] == s);
            // final hop lands back in the source gadget with index 2 (v_0)
            CHECK(net.cub().owner[r.trace.back().to] == s);
            CHECK(r.trace.back().seq_index == 2);
        }
}

TEST_CASE("route under adversarial gadget labels") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    for (std::uint64_t label_seed : {1ull, 2ull, 3ull, 99ull}) {
        auto net = make_net(g, label_seed);
        auto r = route(net, 0, 2);
        CAPTURE(label_seed);
        CHECK(r.status == Status::Success);
    }
}

TEST_CASE("failure walks the full sequence out and back") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g, 0, 16);  // names 0..15 valid, 9 unused
    auto r = route(net, 0, 9);
    CHECK(r.status == Status::Failure);
    CHECK(r.hops == 2 * net.sequence().length());
    CHECK(net.cub().owner[r.trace.back().to] == 0);

    CHECK_THROWS_AS(route(net, 0, 16), std::invalid_argument);  // outside the namespace
    CHECK_THROWS_AS(route(net, 3, 0), std::invalid_argument);   // s must exist
}

TEST_CASE("statelessness audit passes during routing") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g, 0, 16);
    RunOptions opts;
    opts.audit_statelessness = true;
    CHECK(route(net, 0, 2, opts).status == Status::Success);
    CHECK(route(net, 0, 9, opts).status == Status::Failure);
}

TEST_CASE("header bits stay within the codec budget end to end") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    HeaderCodec codec{net.namespace_size(), net.sequence().length()};
    auto r = route(net, 0, 2);
    CHECK(r.max_header_bits > 0);
    CHECK(r.max_header_bits <= codec.budget_bits());
}

TEST_CASE("broadcast reaches exactly the component") {
    GraphBuilder b(5);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(3, 4);
    auto g = b.build();
    auto net = make_net(g);
    auto br = broadcast(net, 1);
    CHECK(br.reached == std::vector<NodeId>{0, 1, 2});
    CHECK(br.result.hops == 2 * net.sequence().length());
    auto other = broadcast(net, 4);
    CHECK(other.reached == std::vector<NodeId>{3, 4});
}

TEST_CASE("empty routing sequence is rejected") {
    ExplorationSequence empty;
    empty.rated_size = 1;
    auto g = generate({GraphFamily::Path, 2}, 1);
    SimNetwork net(reduce_to_cubic(g), empty);
    CHECK_THROWS_AS(route(net, 0, 1), std::invalid_argument);
}

TEST_CASE("trace file format") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    auto r = route(net, 0, 2);
    std::ostringstream out;
    write_trace(out, r);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("# status=success hops=", 0) == 0);
    std::size_t hops = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++hops;
    CHECK(hops == r.hops);
}

TEST_CASE("routing is a pure function of its inputs") {
    auto g = generate({GraphFamily::ErdosRenyi, 8, 0.4}, 33);
    auto net = make_net(g);
    auto a = route(net, 0, 5);
    auto b = route(net, 0, 5);
    CHECK(a.status == b.status);
    CHECK(a.hops == b.hops);
    CHECK(a.trace.size() == b.trace.size());
}

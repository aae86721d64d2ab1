#include <sstream>

#include "doctest.h"
#include "uesnet/exploration.hpp"

using namespace uesnet;

namespace {

// K4 with ports assigned by neighbor order: at each vertex, port p leads
// to the p-th other vertex in increasing order. Every step below is
// checkable by hand.
PortLabeledGraph k4_ordered() {
    GraphBuilder b(4);
    b.add_edge_with_ports(0, 0, 1, 0);
    b.add_edge_with_ports(0, 1, 2, 0);
    b.add_edge_with_ports(0, 2, 3, 0);
    b.add_edge_with_ports(1, 1, 2, 1);
    b.add_edge_with_ports(1, 2, 3, 1);
    b.add_edge_with_ports(2, 2, 3, 2);
    return b.build();
}

ExplorationSequence seq_of(std::vector<std::uint8_t> steps) {
    ExplorationSequence s;
    s.steps = std::move(steps);
    return s;
}

}  // namespace

TEST_CASE("hand-traced walk on K4 with steps 1,1,1") {
    auto g = k4_ordered();
    REQUIRE(validate(g).ok);
    auto seq = seq_of({1, 1, 1});
    DartId e0 = g.dart_at(0, 0);  // traverses 0 -> 1

    // By hand: enter v1 on port 0, leave on port 1 -> v2 (enter port 1),
    // leave on port 2 -> v3 (enter port 2), leave on port 0 -> v0.
    auto walk = trace_walk(g, e0, seq, 3);
    REQUIRE(walk.size() == 4);
    CHECK(walk[0].index == 0);
    CHECK(walk[0].visited == 1);
    CHECK(walk[1].visited == 2);
    CHECK(walk[2].visited == 3);
    CHECK(walk[3].visited == 0);
    CHECK(g.port_of(walk[1].dart) == 1);
    CHECK(g.port_of(walk[2].dart) == 2);
    CHECK(g.port_of(walk[3].dart) == 0);

    auto visits = walk_visits(g, e0, seq.steps, 3);
    CHECK(visits == std::vector<bool>{true, true, true, true});
    // two steps miss vertex 0? no: tail of e_0 counts as visited
    auto partial = walk_visits(g, e0, seq.steps, 2);
    CHECK(partial == std::vector<bool>{true, true, true, true});
    auto none = walk_visits(g, e0, seq.steps, 0);
    CHECK(none == std::vector<bool>{true, true, false, false});
}

TEST_CASE("offset 0 bounces straight back") {
    auto g = k4_ordered();
    DartId e0 = g.dart_at(0, 0);
    // entry port equals exit port: the walk returns along the same edge
    DartId back = next_dart(g, e0, 0);
    CHECK(back == g.pair(e0));
}

TEST_CASE("prev_dart inverts next_dart on random cubic multigraphs") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_cubic_multigraph(2 + 2 * static_cast<NodeId>(rng.below(5)), rng);
        REQUIRE(validate(g).ok);
        for (DartId d = 0; d < g.dart_count(); ++d)
            for (std::uint32_t t = 0; t < 3; ++t) {
                DartId e = next_dart(g, d, t);
                CHECK(g.tail(e) == g.head(d));
                CHECK(prev_dart(g, e, t) == g.pair(d));
            }
    }
}

TEST_CASE("reversal replays a whole walk backwards") {
    Rng rng(77);
    auto g = random_cubic_multigraph(8, rng, true);
    auto seq = seq_of({2, 0, 1, 1, 2, 0, 1, 2, 2, 1});
    auto walk = trace_walk(g, g.dart_at(0, 0), seq, seq.length());
    // reconstruct dart i-1 from dart i and t_i alone
    for (std::size_t i = walk.size(); i-- > 1;) {
        DartId rebuilt = g.pair(prev_dart(g, walk[i].dart, seq.at(walk[i].index)));
        CHECK(rebuilt == walk[i - 1].dart);
    }
}

TEST_CASE("empty sequence is not universal at bound 2") {
    auto verdict = is_universal(seq_of({}), 2);
    CHECK_FALSE(verdict.universal);
    REQUIRE(verdict.counterexample.has_value());
    const auto& cex = *verdict.counterexample;
    // zero steps visit only the endpoints of e_0
    auto visits = walk_visits(cex.graph, cex.start, {}, 0);
    bool all = true;
    for (bool b : visits) all = all && b;
    CHECK_FALSE(all);
}

TEST_CASE("universality verdict counts every walk at bound 2") {
    // 2 classes x 6^2 labelings x 6 start darts
    auto verdict = is_universal(seq_of({}), 2);
    CHECK(verdict.walks_checked <= 2u * 36u * 6u);
    CHECK(verdict.walks_checked >= 1);
    CHECK_THROWS_AS(is_universal(seq_of({}), 3), std::invalid_argument);
}

TEST_CASE("find_ues certifies at bound 2 and the result re-verifies") {
    SearchBudget budget;
    budget.max_length = 256;
    auto found = find_ues(2, SearchStrategy::RandomExtend, budget, 9);
    REQUIRE(found.has_value());
    CHECK(found->rated_size == 2);
    CHECK(found->certificate.kind == Certificate::Kind::Exhaustive);
    CHECK(is_universal(*found, 2).universal);

    auto fixed = find_ues(2, SearchStrategy::IncrementalFix, budget, 9);
    REQUIRE(fixed.has_value());
    CHECK(is_universal(*fixed, 2).universal);
}

TEST_CASE("find_ues is deterministic per seed") {
    SearchBudget budget;
    budget.max_length = 256;
    auto a = find_ues(2, SearchStrategy::RandomExtend, budget, 5);
    auto b = find_ues(2, SearchStrategy::RandomExtend, budget, 5);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->steps == b->steps);
}

TEST_CASE("sample_verify accepts a certified sequence") {
    SearchBudget budget;
    budget.max_length = 256;
    auto found = find_ues(2, SearchStrategy::RandomExtend, budget, 9);
    REQUIRE(found.has_value());
    CHECK(sample_verify(found->steps, 2, 20, 3) == 20);
    CHECK(sample_verify({}, 2, 20, 3) < 20);
}

TEST_CASE("sequence provider: doubling family, cached, certified") {
    SequenceProvider provider(123, 2);
    const auto& t1 = provider.get(1);
    CHECK(t1.rated_size == 2);
    CHECK(t1.certificate.kind == Certificate::Kind::Exhaustive);
    const auto& t0 = provider.get(0);
    CHECK(t0.rated_size == 1);
    CHECK(t0.length() == 0);
    const auto& t2 = provider.get(2);
    CHECK(t2.rated_size == 4);
    CHECK(t2.certificate.kind == Certificate::Kind::Sampled);  // beyond exhaustive bound 2
    CHECK(&provider.get(2) == &t2);  // cache returns the same object
}

TEST_CASE("certificate lines round trip") {
    Certificate c;
    c.kind = Certificate::Kind::Sampled;
    c.bound = 64;
    c.samples = 200;
    c.seed = 42;
    auto back = Certificate::from_line(c.to_line());
    CHECK(back.kind == c.kind);
    CHECK(back.bound == c.bound);
    CHECK(back.samples == c.samples);
    CHECK(back.seed == c.seed);
}

TEST_CASE("sequence files round trip bit-exactly") {
    SearchBudget budget;
    budget.max_length = 256;
    auto seq = find_ues(2, SearchStrategy::RandomExtend, budget, 9);
    REQUIRE(seq.has_value());
    std::ostringstream out;
    write_sequence(out, *seq);
    std::istringstream in(out.str());
    auto back = read_sequence(in);
    CHECK(back.steps == seq->steps);
    CHECK(back.rated_size == seq->rated_size);
    CHECK(back.certificate.kind == seq->certificate.kind);
    CHECK(back.certificate.bound == seq->certificate.bound);

    std::istringstream bad("not a sequence\n");
    CHECK_THROWS_AS(read_sequence(bad), std::runtime_error);
}

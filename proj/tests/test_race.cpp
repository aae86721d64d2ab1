#include "doctest.h"
#include "uesnet/race.hpp"

using namespace uesnet;

namespace {

const ExplorationSequence& bound4() {
    static ExplorationSequence seq = [] {
        SearchBudget budget;
        budget.max_length = 4096;
        auto found = find_ues(4, SearchStrategy::RandomExtend, budget, 21);
        REQUIRE(found.has_value());
        return *found;
    }();
    return seq;
}

SimNetwork make_net(const PortLabeledGraph& g, std::uint64_t ns = 0) {
    return SimNetwork(reduce_to_cubic(g), bound4(), ns);
}

}  // namespace

TEST_CASE("guaranteed stepper replays route hop for hop") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    auto r = route(net, 0, 2);
    REQUIRE(r.status == Status::Success);
    GuaranteedStepper stepper(net, 0, 2);
    while (stepper.state() == StepState::Running) stepper.step();
    CHECK(stepper.state() == StepState::Succeeded);
    CHECK(stepper.hops() == r.hops);
    // finished steppers ignore further step() calls
    stepper.step();
    CHECK(stepper.hops() == r.hops);
}

TEST_CASE("guaranteed stepper mirrors failure too") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g, 16);
    GuaranteedStepper stepper(net, 0, 9);
    while (stepper.state() == StepState::Running) stepper.step();
    CHECK(stepper.state() == StepState::Failed);
    CHECK(stepper.hops() == 2 * net.sequence().length());
}

TEST_CASE("guaranteed stepper: s == t succeeds with no hops") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    GuaranteedStepper stepper(net, 1, 1);
    CHECK(stepper.state() == StepState::Succeeded);
    CHECK(stepper.hops() == 0);
}

TEST_CASE("random walk: deterministic per seed, fails at TTL") {
    auto g = generate({GraphFamily::Cycle, 6}, 2);
    auto net = make_net(g);
    auto a = random_walk_route(net, 0, 3, 500, 42);
    auto b = random_walk_route(net, 0, 3, 500, 42);
    CHECK(a.status == b.status);
    CHECK(a.hops == b.hops);

    auto starved = random_walk_route(net, 0, 3, 1, 42);
    CHECK(starved.status == Status::Failure);
    CHECK(starved.hops <= 1);
}

TEST_CASE("random walk eventually hits a connected target") {
    auto g = generate({GraphFamily::Cycle, 4}, 2);
    auto net = make_net(g);
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto r = random_walk_route(net, 0, 2, 100000, seed);
        if (r.status == Status::Success) ++wins;
    }
    CHECK(wins == 20);  // TTL far above the expected hitting time
}

TEST_CASE("race always terminates with the correct verdict") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g, 16);

    // reachable: someone wins, with success
    RandomWalkStepper fast(net, 0, 2, 100000, 5);
    auto win = race(net, 0, 2, fast, 1);
    CHECK(win.status == Status::Success);
    CHECK(win.winner != RaceWinner::GuaranteedFailure);
    CHECK(win.hops_total == win.hops_prob + win.hops_guar);

    // unreachable: guaranteed router bounds the race and reports failure
    RandomWalkStepper lost(net, 0, 9, 100000, 5);
    auto bound = race(net, 0, 9, lost, 1);
    CHECK(bound.status == Status::Failure);
    CHECK(bound.winner == RaceWinner::GuaranteedFailure);
    CHECK(bound.hops_guar == 2 * net.sequence().length());
}

TEST_CASE("zero-TTL walker loses to the guaranteed router") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    RandomWalkStepper dead(net, 0, 2, 0, 1);
    auto r = race(net, 0, 2, dead, 4);
    CHECK(r.winner == RaceWinner::Guaranteed);
    CHECK(r.status == Status::Success);
    CHECK(r.hops_guar == route(net, 0, 2).hops);
}

TEST_CASE("quantum scheduling gives the probabilistic router first turn") {
    auto g = generate({GraphFamily::Path, 2}, 1);
    auto net = make_net(g);
    // on K2's reduction the walker reaches the target in one hop often
    // enough; with a huge quantum it must win whenever it succeeds at all
    RandomWalkStepper walker(net, 0, 1, 100000, 3);
    auto r = race(net, 0, 1, walker, 1000000);
    CHECK(r.status == Status::Success);
    CHECK(r.winner == RaceWinner::Probabilistic);
    CHECK(r.hops_guar == 0);
}

TEST_CASE("race report text") {
    auto g = generate({GraphFamily::Path, 3}, 1);
    auto net = make_net(g);
    RandomWalkStepper walker(net, 0, 2, 1000, 9);
    auto r = race(net, 0, 2, walker, 1);
    auto text = race_report(r);
    CHECK(text.find("winner") != std::string::npos);
    CHECK(text.find("hops") != std::string::npos);
}

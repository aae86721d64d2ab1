#include "uesnet/race.hpp"

#include <sstream>
#include <stdexcept>

namespace uesnet {

GuaranteedStepper::GuaranteedStepper(const SimNetwork& net, NodeId s, NodeId t)
    : net_(net), header_{s, t, Direction::Forward, Status::Pending, 1} {
    if (s >= net.original_vertex_count()) throw std::invalid_argument("unknown source vertex");
    if (t >= net.namespace_size()) throw std::invalid_argument("target outside namespace");
    if (net.sequence().length() == 0) throw std::invalid_argument("empty exploration sequence");
    cur_ = net.start_dart(s);
    if (s == t) state_ = StepState::Succeeded;  // injection short circuit
}

void GuaranteedStepper::step() {
    if (state_ != StepState::Running) return;
    const PortLabeledGraph& g = net_.gprime();
    NodeId v = g.head(cur_);
    VertexView view{g, v, net_.cub().owner[v], net_.sequence()};
    HandleOutcome out = handle_message(view, cur_, header_);
    if (out.terminal) {
        state_ = out.status == Status::Success ? StepState::Succeeded : StepState::Failed;
        return;
    }
    cur_ = out.send_on;
    header_ = out.header;
    ++hops_;
}

RandomWalkStepper::RandomWalkStepper(const SimNetwork& net, NodeId s, NodeId t, std::uint64_t ttl,
                                     std::uint64_t seed)
    : net_(net), rng_(seed), target_(net.gprime().vertex_count(), false), ttl_(ttl) {
    if (s >= net.original_vertex_count()) throw std::invalid_argument("unknown source vertex");
    if (t < net.original_vertex_count())
        for (NodeId gv : lift_target(net.cub(), t)) target_[gv] = true;
    at_ = net.cub().gadget[s][0];
    if (s == t) state_ = StepState::Succeeded;
}

void RandomWalkStepper::step() {
    if (state_ != StepState::Running) return;
    if (hops_ >= ttl_) {
        state_ = StepState::Failed;
        return;
    }
    const PortLabeledGraph& g = net_.gprime();
    std::uint32_t port = static_cast<std::uint32_t>(rng_.below(g.degree(at_)));
    at_ = g.head(g.dart_at(at_, port));
    ++hops_;
    if (target_[at_]) {
        state_ = StepState::Succeeded;
        return;
    }
    if (hops_ >= ttl_) state_ = StepState::Failed;
}

RandomWalkResult random_walk_route(const SimNetwork& net, NodeId s, NodeId t, std::uint64_t ttl,
                                   std::uint64_t seed) {
    RandomWalkStepper stepper(net, s, t, ttl, seed);
    while (stepper.state() == StepState::Running) stepper.step();
    return RandomWalkResult{
        stepper.state() == StepState::Succeeded ? Status::Success : Status::Failure,
        stepper.hops()};
}

RaceResult race(const SimNetwork& net, NodeId s, NodeId t, HopStepper& prob_router,
                std::uint64_t quantum) {
    if (quantum < 1) throw std::invalid_argument("quantum must be >= 1");
    GuaranteedStepper guar(net, s, t);

    RaceResult r;
    auto finish = [&](RaceWinner w, Status st) {
        r.winner = w;
        r.status = st;
        r.hops_prob = prob_router.hops();
        r.hops_guar = guar.hops();
        r.hops_total = r.hops_prob + r.hops_guar;
        return r;
    };
    for (;;) {
        for (std::uint64_t q = 0; q < quantum && prob_router.state() == StepState::Running; ++q)
            prob_router.step();
        if (prob_router.state() == StepState::Succeeded)
            return finish(RaceWinner::Probabilistic, Status::Success);
        for (std::uint64_t q = 0; q < quantum && guar.state() == StepState::Running; ++q)
            guar.step();
        if (guar.state() == StepState::Succeeded)
            return finish(RaceWinner::Guaranteed, Status::Success);
        if (guar.state() == StepState::Failed)
            return finish(RaceWinner::GuaranteedFailure, Status::Failure);
    }
}

std::string race_report(const RaceResult& r) {
    std::ostringstream out;
    const char* winner = r.winner == RaceWinner::Probabilistic ? "probabilistic"
                         : r.winner == RaceWinner::Guaranteed  ? "guaranteed"
                                                               : "guaranteed_failure";
    out << "winner " << winner << '\n';
    out << "status " << (r.status == Status::Success ? "success" : "failure") << '\n';
    out << "hops_prob " << r.hops_prob << '\n';
    out << "hops_guar " << r.hops_guar << '\n';
    out << "hops_total " << r.hops_total << '\n';
    return out.str();
}

}  // namespace uesnet

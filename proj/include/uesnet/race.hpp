#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "uesnet/route.hpp"

namespace uesnet {

// Racing composition: a pluggable probabilistic router interleaved with
// the guaranteed router by hop quantum; the first success wins, and the
// guaranteed router bounds termination.

enum class StepState : std::uint8_t { Running, Succeeded, Failed };

class HopStepper {
public:
    virtual ~HopStepper() = default;
    virtual StepState state() const = 0;
    virtual void step() = 0;  // one hop; no-op once finished
    virtual std::uint64_t hops() const = 0;
};

// The guaranteed router as an incremental state machine, one hop per step().
class GuaranteedStepper : public HopStepper {
public:
    GuaranteedStepper(const SimNetwork& net, NodeId s, NodeId t);
    StepState state() const override { return state_; }
    void step() override;
    std::uint64_t hops() const override { return hops_; }

private:
    const SimNetwork& net_;
    MessageHeader header_;
    DartId cur_;
    StepState state_ = StepState::Running;
    std::uint64_t hops_ = 0;
};

// The naive reference router: a seeded uniform random walk with a TTL,
// success detected at the simulator level on arrival at any gadget
// vertex of t, with no confirmation path.
class RandomWalkStepper : public HopStepper {
public:
    RandomWalkStepper(const SimNetwork& net, NodeId s, NodeId t, std::uint64_t ttl,
                      std::uint64_t seed);
    StepState state() const override { return state_; }
    void step() override;
    std::uint64_t hops() const override { return hops_; }

private:
    const SimNetwork& net_;
    Rng rng_;
    NodeId at_;
    std::vector<bool> target_;
    std::uint64_t ttl_;
    StepState state_ = StepState::Running;
    std::uint64_t hops_ = 0;
};

struct RandomWalkResult {
    Status status = Status::Failure;
    std::uint64_t hops = 0;
};

RandomWalkResult random_walk_route(const SimNetwork& net, NodeId s, NodeId t, std::uint64_t ttl,
                                   std::uint64_t seed);

enum class RaceWinner : std::uint8_t { Probabilistic, Guaranteed, GuaranteedFailure };

struct RaceResult {
    RaceWinner winner = RaceWinner::GuaranteedFailure;
    Status status = Status::Failure;
    std::uint64_t hops_prob = 0;
    std::uint64_t hops_guar = 0;
    std::uint64_t hops_total = 0;
};

// Deterministic round-robin interleaving: `quantum` hops of the
// probabilistic router, then `quantum` of the guaranteed one, until one
// succeeds or the guaranteed router completes.
RaceResult race(const SimNetwork& net, NodeId s, NodeId t, HopStepper& prob_router,
                std::uint64_t quantum);

std::string race_report(const RaceResult& r);

}  // namespace uesnet

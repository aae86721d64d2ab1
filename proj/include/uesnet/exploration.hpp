#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uesnet/graph.hpp"

namespace uesnet {

// Exploration-sequence semantics (step, reverse, walk tracing), the
// universality verifier, and certified sequence providers.

struct Certificate {
    enum class Kind { Unverified, Exhaustive, Sampled };
    Kind kind = Kind::Unverified;
    std::uint32_t bound = 0;
    std::uint32_t samples = 0;  // sampled only
    std::uint64_t seed = 0;     // sampled only
    std::string to_line() const;
    static Certificate from_line(const std::string& line);
};

struct ExplorationSequence {
    std::vector<std::uint8_t> steps;  // t_1..t_N, 1-based access via at()
    std::uint32_t rated_size = 0;
    Certificate certificate;

    std::uint64_t length() const { return steps.size(); }
    std::uint8_t at(std::uint64_t i) const { return steps[i - 1]; }  // i in [1, N]
};

// Step rule: having entered v on dart `entered_on` (tail side; the walk
// sits at head(entered_on)), leave on the dart at v whose port is
// (entry port + t) mod deg(v).
DartId next_dart(const PortLabeledGraph& g, DartId entered_on, std::uint32_t t);

// Reversal: knowing the dart taken at some step and its offset t, the
// dart at v whose port is (exit port - t) mod deg(v) is the pair of the
// previously traversed dart.
DartId prev_dart(const PortLabeledGraph& g, DartId exited_on, std::uint32_t t);

struct WalkEntry {
    std::uint64_t index;  // 0 for e_0
    DartId dart;          // traversed dart, tail side
    NodeId visited;       // head of the dart
};

// Deterministic trace of the first `limit` steps from e_0 = start.
// Entry 0 is e_0 itself; the walk also visits tail(start).
std::vector<WalkEntry> trace_walk(const PortLabeledGraph& g, DartId start,
                                  const ExplorationSequence& seq, std::uint64_t limit);

// Coverage helper: vertices visited by the first `limit` steps from e_0.
std::vector<bool> walk_visits(const PortLabeledGraph& g, DartId start,
                              const std::vector<std::uint8_t>& steps, std::uint64_t limit);

struct Counterexample {
    PortLabeledGraph graph;
    DartId start = 0;
    std::vector<NodeId> visited;
};

struct UniversalityVerdict {
    bool universal = false;
    std::optional<Counterexample> counterexample;
    std::uint64_t walks_checked = 0;
};

struct VerifyMode {
    LabelingMode labelings = LabelingMode::Exhaustive;
    std::uint32_t samples = 0;
    std::uint64_t seed = 0;
};

// Universality check: every enumerated connected cubic multigraph with
// |V| <= bound, every (or a seeded sample of) port labelings, every
// initial dart. Throws on odd bound.
UniversalityVerdict is_universal(const ExplorationSequence& seq, std::uint32_t bound,
                                 const VerifyMode& mode = {});

// Spot check against seeded random connected cubic multigraphs of size
// <= bound (used past the exhaustive-enumeration scale). Returns the
// number of covering walks out of `samples`.
std::uint32_t sample_verify(const std::vector<std::uint8_t>& steps, std::uint32_t bound,
                            std::uint32_t samples, std::uint64_t seed);

enum class SearchStrategy { RandomExtend, IncrementalFix };

struct SearchBudget {
    std::uint64_t max_length = 1 << 20;
    std::uint32_t max_attempts = 64;
};

// Search for a sequence certified at `bound` (exhaustive verification).
// Deterministic for a fixed seed; nullopt when the budget runs out.
std::optional<ExplorationSequence> find_ues(std::uint32_t bound, SearchStrategy strategy,
                                            const SearchBudget& budget, std::uint64_t seed);

// The doubling family T_{2^k}. Exhaustive certification up to
// exhaustive_bound, seeded sample certification beyond it; results are
// cached per k.
class SequenceProvider {
public:
    explicit SequenceProvider(std::uint64_t seed, std::uint32_t exhaustive_bound = 4);

    // Throws std::runtime_error when the search at level k fails.
    const ExplorationSequence& get(std::uint32_t k);

    std::uint32_t exhaustive_bound() const { return exhaustive_bound_; }

private:
    std::uint64_t seed_;
    std::uint32_t exhaustive_bound_;
    std::map<std::uint32_t, ExplorationSequence> cache_;
};

// Sequence file format: "rated_size length certificate_line" then the
// steps as one line of digits. Round-trips bit-exactly.
void write_sequence(std::ostream& out, const ExplorationSequence& seq);
ExplorationSequence read_sequence(std::istream& in);
void write_sequence_file(const std::string& path, const ExplorationSequence& seq);
ExplorationSequence read_sequence_file(const std::string& path);

}  // namespace uesnet

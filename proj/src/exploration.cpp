#include "uesnet/exploration.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

namespace uesnet {

std::string Certificate::to_line() const {
    switch (kind) {
        case Kind::Exhaustive:
            return "exhaustive " + std::to_string(bound);
        case Kind::Sampled:
            return "sampled " + std::to_string(bound) + " " + std::to_string(samples) + " " +
                   std::to_string(seed);
        case Kind::Unverified:
            return "unverified";
    }
    return "unverified";
}

Certificate Certificate::from_line(const std::string& line) {
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    Certificate c;
    if (kind == "exhaustive") {
        c.kind = Kind::Exhaustive;
        if (!(in >> c.bound)) throw std::runtime_error("bad certificate line: " + line);
    } else if (kind == "sampled") {
        c.kind = Kind::Sampled;
        if (!(in >> c.bound >> c.samples >> c.seed))
            throw std::runtime_error("bad certificate line: " + line);
    } else if (kind == "unverified") {
        c.kind = Kind::Unverified;
    } else {
        throw std::runtime_error("bad certificate line: " + line);
    }
    return c;
}

DartId next_dart(const PortLabeledGraph& g, DartId entered_on, std::uint32_t t) {
    NodeId v = g.head(entered_on);
    std::uint32_t deg = g.degree(v);
    std::uint32_t entry = g.port_of(g.pair(entered_on));
    return g.dart_at(v, (entry + t) % deg);
}

DartId prev_dart(const PortLabeledGraph& g, DartId exited_on, std::uint32_t t) {
    NodeId v = g.tail(exited_on);
    std::uint32_t deg = g.degree(v);
    std::uint32_t port = (g.port_of(exited_on) + deg - t % deg) % deg;
    return g.dart_at(v, port);
}

std::vector<WalkEntry> trace_walk(const PortLabeledGraph& g, DartId start,
                                  const ExplorationSequence& seq, std::uint64_t limit) {
    if (limit > seq.length()) throw std::invalid_argument("limit exceeds sequence length");
    std::vector<WalkEntry> out;
    out.reserve(limit + 1);
    out.push_back({0, start, g.head(start)});
    DartId cur = start;
    for (std::uint64_t i = 1; i <= limit; ++i) {
        cur = next_dart(g, cur, seq.at(i));
        out.push_back({i, cur, g.head(cur)});
    }
    return out;
}

std::vector<bool> walk_visits(const PortLabeledGraph& g, DartId start,
                              const std::vector<std::uint8_t>& steps, std::uint64_t limit) {
    std::vector<bool> seen(g.vertex_count(), false);
    seen[g.tail(start)] = true;
    seen[g.head(start)] = true;
    DartId cur = start;
    for (std::uint64_t i = 0; i < limit; ++i) {
        cur = next_dart(g, cur, steps[i]);
        seen[g.head(cur)] = true;
    }
    return seen;
}

namespace {

bool walk_covers(const PortLabeledGraph& g, DartId start, const std::vector<std::uint8_t>& steps) {
    const NodeId n = g.vertex_count();
    std::vector<char> seen(n, 0);
    NodeId remaining = n;
    auto mark = [&](NodeId v) {
        if (!seen[v]) {
            seen[v] = 1;
            --remaining;
        }
    };
    mark(g.tail(start));
    mark(g.head(start));
    DartId cur = start;
    for (std::uint8_t t : steps) {
        if (remaining == 0) return true;
        cur = next_dart(g, cur, t);
        mark(g.head(cur));
    }
    return remaining == 0;
}

std::vector<NodeId> visited_list(const PortLabeledGraph& g, DartId start,
                                 const std::vector<std::uint8_t>& steps) {
    auto seen = walk_visits(g, start, steps, steps.size());
    std::vector<NodeId> out;
    for (NodeId v = 0; v < seen.size(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

}  // namespace

UniversalityVerdict is_universal(const ExplorationSequence& seq, std::uint32_t bound,
                                 const VerifyMode& mode) {
    if (bound < 2 || bound % 2 != 0) throw std::invalid_argument("bound must be even and >= 2");
    UniversalityVerdict verdict;
    verdict.universal = true;
    LabelingOptions lopts;
    lopts.mode = mode.labelings;
    lopts.samples = mode.samples;
    lopts.seed = mode.seed;
    for (const CubicClass& cls : enumerate_cubic(bound)) {
        bool keep_going = true;
        for_each_labeling(cls.base, lopts, [&](const PortLabeledGraph& labeled) {
            for (DartId start = 0; start < labeled.dart_count(); ++start) {
                ++verdict.walks_checked;
                if (!walk_covers(labeled, start, seq.steps)) {
                    verdict.universal = false;
                    verdict.counterexample =
                        Counterexample{labeled, start, visited_list(labeled, start, seq.steps)};
                    keep_going = false;
                    return false;
                }
            }
            return true;
        });
        if (!keep_going) break;
    }
    return verdict;
}

std::uint32_t sample_verify(const std::vector<std::uint8_t>& steps, std::uint32_t bound,
                            std::uint32_t samples, std::uint64_t seed) {
    Rng rng(seed);
    std::uint32_t covered = 0;
    for (std::uint32_t s = 0; s < samples; ++s) {
        // Bias toward the rated size; smaller graphs are strictly easier.
        NodeId n = bound;
        if (s % 2 == 1 && bound > 2) n = 2 * (1 + static_cast<NodeId>(rng.below(bound / 2)));
        PortLabeledGraph g = random_cubic_multigraph(n, rng, /*connected=*/true);
        DartId start = static_cast<DartId>(rng.below(g.dart_count()));
        if (walk_covers(g, start, steps)) ++covered;
    }
    return covered;
}

namespace {

void extend_random(std::vector<std::uint8_t>& steps, std::uint64_t upto, Rng& rng) {
    while (steps.size() < upto) steps.push_back(static_cast<std::uint8_t>(rng.below(3)));
}

std::optional<ExplorationSequence> search_random_extend(std::uint32_t bound,
                                                        const SearchBudget& budget,
                                                        std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> steps;
    std::uint32_t attempts = 0;
    for (std::uint64_t len = 8; len <= budget.max_length; len *= 2) {
        if (++attempts > budget.max_attempts) break;
        extend_random(steps, len, rng);
        ExplorationSequence cand{steps, bound, Certificate{}};
        if (is_universal(cand, bound).universal) {
            cand.certificate = Certificate{Certificate::Kind::Exhaustive, bound, 0, 0};
            return cand;
        }
    }
    return std::nullopt;
}

std::optional<ExplorationSequence> search_incremental_fix(std::uint32_t bound,
                                                          const SearchBudget& budget,
                                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> steps;
    extend_random(steps, 8, rng);
    std::uint32_t attempts = 0;
    while (steps.size() <= budget.max_length) {
        if (++attempts > budget.max_attempts) break;
        ExplorationSequence cand{steps, bound, Certificate{}};
        auto verdict = is_universal(cand, bound);
        if (verdict.universal) {
            cand.certificate = Certificate{Certificate::Kind::Exhaustive, bound, 0, 0};
            return cand;
        }
        // Grow until the offending walk covers its graph, then re-verify.
        const Counterexample& cex = *verdict.counterexample;
        while (steps.size() <= budget.max_length && !walk_covers(cex.graph, cex.start, steps))
            extend_random(steps, steps.size() + 8, rng);
    }
    return std::nullopt;
}

}  // namespace

std::optional<ExplorationSequence> find_ues(std::uint32_t bound, SearchStrategy strategy,
                                            const SearchBudget& budget, std::uint64_t seed) {
    if (bound < 2 || bound % 2 != 0) throw std::invalid_argument("bound must be even and >= 2");
    switch (strategy) {
        case SearchStrategy::RandomExtend:
            return search_random_extend(bound, budget, seed);
        case SearchStrategy::IncrementalFix:
            return search_incremental_fix(bound, budget, seed);
    }
    return std::nullopt;
}

namespace {

// Sampled certification for bounds past the enumeration scale: doubling
// candidate lengths until every spot check covers, then one extra
// doubling as margin.
std::optional<ExplorationSequence> search_sampled(std::uint32_t bound, std::uint32_t samples,
                                                  std::uint64_t seed, std::uint64_t max_length) {
    Rng rng(seed);
    std::vector<std::uint8_t> steps;
    std::uint64_t verify_seed = rng.next();
    bool passed_once = false;
    for (std::uint64_t len = std::max<std::uint64_t>(16, bound); len <= max_length; len *= 2) {
        extend_random(steps, len, rng);
        if (sample_verify(steps, bound, samples, verify_seed) == samples) {
            if (passed_once) {
                ExplorationSequence seq{steps, bound,
                                        Certificate{Certificate::Kind::Sampled, bound, samples, seed}};
                return seq;
            }
            passed_once = true;  // margin doubling
        } else {
            passed_once = false;
        }
    }
    return std::nullopt;
}

}  // namespace

SequenceProvider::SequenceProvider(std::uint64_t seed, std::uint32_t exhaustive_bound)
    : seed_(seed), exhaustive_bound_(exhaustive_bound) {}

const ExplorationSequence& SequenceProvider::get(std::uint32_t k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;

    ExplorationSequence seq;
    if (k == 0) {
        // T_1: no cubic graph has a single vertex, so the empty sequence
        // is vacuously universal at rated size 1.
        seq.rated_size = 1;
        seq.certificate = Certificate{Certificate::Kind::Exhaustive, 1, 0, 0};
    } else {
        const std::uint32_t bound = 1u << k;
        const std::uint64_t sub_seed = seed_ ^ (0x9e3779b97f4a7c15ull * (k + 1));
        if (bound <= exhaustive_bound_) {
            auto found = find_ues(bound, SearchStrategy::RandomExtend, SearchBudget{}, sub_seed);
            if (!found)
                throw std::runtime_error("sequence search failed at k=" + std::to_string(k));
            seq = std::move(*found);
        } else {
            auto found = search_sampled(bound, /*samples=*/48, sub_seed,
                                        /*max_length=*/64ull * bound * bound);
            if (!found)
                throw std::runtime_error("sampled sequence search failed at k=" + std::to_string(k));
            seq = std::move(*found);
        }
        seq.rated_size = bound;
    }
    return cache_.emplace(k, std::move(seq)).first->second;
}

void write_sequence(std::ostream& out, const ExplorationSequence& seq) {
    out << seq.rated_size << ' ' << seq.length() << ' ' << seq.certificate.to_line() << '\n';
    for (std::uint8_t t : seq.steps) out << static_cast<char>('0' + t);
    out << '\n';
}

ExplorationSequence read_sequence(std::istream& in) {
    ExplorationSequence seq;
    std::uint64_t length = 0;
    std::string cert_line;
    if (!(in >> seq.rated_size >> length)) throw std::runtime_error("sequence parse error: header");
    std::getline(in, cert_line);
    if (!cert_line.empty() && cert_line.front() == ' ') cert_line.erase(0, 1);
    seq.certificate = Certificate::from_line(cert_line);
    std::string digits;
    std::getline(in, digits);
    if (digits.size() != length) throw std::runtime_error("sequence parse error: length mismatch");
    seq.steps.reserve(length);
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::runtime_error("sequence parse error: bad step digit");
        seq.steps.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return seq;
}

void write_sequence_file(const std::string& path, const ExplorationSequence& seq) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    write_sequence(f, seq);
}

ExplorationSequence read_sequence_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return read_sequence(f);
}

}  // namespace uesnet

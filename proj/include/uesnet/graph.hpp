#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uesnet {

// A dart is one oriented half of an undirected edge, identified by
// (vertex, port). Darts are stored densely and addressed by index; the
// involution `pair` maps each dart to the opposite half of its edge.
// A self-loop contributes two distinct darts at the same vertex, paired
// with each other, carrying two distinct port labels.

using NodeId = std::uint32_t;
using DartId = std::uint32_t;

inline constexpr DartId kNoDart = static_cast<DartId>(-1);

struct Dart {
    NodeId vertex;
    std::uint32_t port;
    bool operator==(const Dart&) const = default;
};

class PortLabeledGraph {
public:
    PortLabeledGraph() = default;

    NodeId vertex_count() const { return static_cast<NodeId>(ports_.size()); }
    std::size_t dart_count() const { return darts_.size(); }
    std::size_t edge_count() const { return darts_.size() / 2; }

    std::uint32_t degree(NodeId v) const { return static_cast<std::uint32_t>(ports_[v].size()); }
    DartId dart_at(NodeId v, std::uint32_t port) const { return ports_[v][port]; }
    const Dart& dart(DartId d) const { return darts_[d]; }
    DartId pair(DartId d) const { return pair_[d]; }

    NodeId tail(DartId d) const { return darts_[d].vertex; }
    NodeId head(DartId d) const { return darts_[pair_[d]].vertex; }
    std::uint32_t port_of(DartId d) const { return darts_[d].port; }

    // Names are drawn from [0, namespace_size); defaults to vertex_count().
    std::uint64_t namespace_size() const {
        return namespace_size_ ? namespace_size_ : vertex_count();
    }
    void set_namespace_size(std::uint64_t ns) { namespace_size_ = ns; }

    // Unchecked raw constructor, used by builders and by tests that need
    // deliberately broken graphs. validate() is the checked path.
    static PortLabeledGraph from_raw(NodeId n, std::vector<Dart> darts,
                                     std::vector<DartId> pair);

private:
    std::vector<std::vector<DartId>> ports_;  // vertex -> port -> dart
    std::vector<Dart> darts_;                 // dart -> (vertex, port)
    std::vector<DartId> pair_;                // involution
    std::uint64_t namespace_size_ = 0;
};

// Incremental construction: edges appended with explicit ports or with
// the next free port at each endpoint.
class GraphBuilder {
public:
    explicit GraphBuilder(NodeId n) : n_(n) {}

    void add_edge(NodeId u, NodeId v);
    void add_edge_with_ports(NodeId u, std::uint32_t pu, NodeId v, std::uint32_t pv);
    PortLabeledGraph build() const;

    NodeId vertex_count() const { return n_; }

private:
    struct Half { NodeId v; std::optional<std::uint32_t> port; };
    NodeId n_;
    std::vector<std::pair<Half, Half>> edges_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const PortLabeledGraph& g);

// Deterministic 64-bit generator; wraps the stdlib engine but routes all
// range reduction through rng_below so output does not depend on
// implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n)
    double unit();                          // [0, 1)
    Rng fork(std::uint64_t salt);           // derived stream

private:
    std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

enum class GraphFamily { Path, Cycle, Complete, ErdosRenyi, UnitDisk, Star };

struct GenerateParams {
    GraphFamily family = GraphFamily::Path;
    std::uint32_t size = 0;
    double p = 0.0;       // erdos_renyi edge probability
    double radius = 0.0;  // unit_disk connection radius
};

std::optional<GraphFamily> family_from_name(const std::string& name);
std::string family_name(GraphFamily f);

// Deterministic for (params, seed); port labels are a seeded random
// permutation at each vertex. Throws std::invalid_argument on bad params.
PortLabeledGraph generate(const GenerateParams& params, std::uint64_t seed);

// Random 3-regular multigraph via a random perfect matching on 3n darts.
// connected=true retries until the result is connected.
PortLabeledGraph random_cubic_multigraph(NodeId n, Rng& rng, bool connected = false);

std::vector<NodeId> bfs_component(const PortLabeledGraph& g, NodeId s);
bool is_connected(const PortLabeledGraph& g);

// Port relabeling: perms[v] maps old port -> new port at v.
PortLabeledGraph relabel_ports(const PortLabeledGraph& g,
                               const std::vector<std::vector<std::uint32_t>>& perms);

// --- enumeration of connected cubic multigraphs -------------------------

// One isomorphism-class representative, carried with its canonical port
// labeling (ports in deterministic incidence order).
struct CubicClass {
    PortLabeledGraph base;
};

// Every class with |V| <= max_vertices (loops and parallel edges
// included), deduped by canonical form. Throws on odd max_vertices.
// Intended for small bounds; cost grows as n! per candidate.
std::vector<CubicClass> enumerate_cubic(std::uint32_t max_vertices);

// Canonical encoding of the underlying multigraph (labels ignored);
// equal encodings iff isomorphic. Brute force over vertex permutations.
std::string canonical_form(const PortLabeledGraph& g);

enum class LabelingMode { Exhaustive, Sampled };

struct LabelingOptions {
    LabelingMode mode = LabelingMode::Exhaustive;
    std::uint32_t samples = 0;    // sampled mode
    std::uint64_t seed = 0;
};

// Invokes fn for each port labeling of g (all of them, or a seeded
// sample). fn returning false stops the stream early.
void for_each_labeling(const PortLabeledGraph& g, const LabelingOptions& opts,
                       const std::function<bool(const PortLabeledGraph&)>& fn);

// --- serialization -------------------------------------------------------

// Text format: header "n m", then one line per edge "u u_port v v_port",
// sorted by (min endpoint, its port). Self-loop written "v p1 v p2".
void write_graph(std::ostream& out, const PortLabeledGraph& g);
PortLabeledGraph read_graph(std::istream& in);  // throws std::runtime_error on parse errors

void write_graph_file(const std::string& path, const PortLabeledGraph& g);
PortLabeledGraph read_graph_file(const std::string& path);

}  // namespace uesnet

#include "uesnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uesnet {

PortLabeledGraph PortLabeledGraph::from_raw(NodeId n, std::vector<Dart> darts,
                                            std::vector<DartId> pair) {
    PortLabeledGraph g;
    g.ports_.resize(n);
    g.darts_ = std::move(darts);
    g.pair_ = std::move(pair);
    for (DartId d = 0; d < g.darts_.size(); ++d) {
        const Dart& dd = g.darts_[d];
        if (dd.vertex >= n) throw std::invalid_argument("dart vertex out of range");
        auto& slots = g.ports_[dd.vertex];
        if (dd.port >= slots.size()) slots.resize(dd.port + 1, kNoDart);
        slots[dd.port] = d;
    }
    return g;
}

void GraphBuilder::add_edge(NodeId u, NodeId v) {
    edges_.push_back({{u, std::nullopt}, {v, std::nullopt}});
}

void GraphBuilder::add_edge_with_ports(NodeId u, std::uint32_t pu, NodeId v, std::uint32_t pv) {
    edges_.push_back({{u, pu}, {v, pv}});
}

PortLabeledGraph GraphBuilder::build() const {
    std::vector<Dart> darts;
    std::vector<DartId> pair;
    std::vector<std::uint32_t> next_port(n_, 0);

    // Explicit ports reserve their slots first.
    for (const auto& [a, b] : edges_) {
        if (a.v >= n_ || b.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    }
    auto assign = [&](const Half& h) -> Dart {
        if (h.port) return Dart{h.v, *h.port};
        return Dart{h.v, next_port[h.v]++};
    };
    // Two passes so implicit ports skip past explicit ones.
    std::vector<std::vector<bool>> taken(n_);
    for (const auto& [a, b] : edges_) {
        for (const Half* h : {&a, &b}) {
            if (!h->port) continue;
            auto& t = taken[h->v];
            if (*h->port >= t.size()) t.resize(*h->port + 1, false);
            if (t[*h->port]) throw std::invalid_argument("duplicate port assignment");
            t[*h->port] = true;
        }
    }
    auto skip_taken = [&](NodeId v) {
        auto& t = taken[v];
        while (next_port[v] < t.size() && t[next_port[v]]) ++next_port[v];
    };
    for (const auto& [a, b] : edges_) {
        skip_taken(a.v);
        Dart da = assign(a);
        skip_taken(b.v);
        Dart db = assign(b);
        DartId ia = static_cast<DartId>(darts.size());
        darts.push_back(da);
        darts.push_back(db);
        pair.push_back(ia + 1);
        pair.push_back(ia);
    }
    return PortLabeledGraph::from_raw(n_, std::move(darts), std::move(pair));
}

ValidationReport validate(const PortLabeledGraph& g) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    for (DartId d = 0; d < g.dart_count(); ++d) {
        DartId p = g.pair(d);
        if (p >= g.dart_count()) {
            fail("dart " + std::to_string(d) + ": pair out of range");
            continue;
        }
        if (p == d) fail("dart " + std::to_string(d) + ": pairs with itself");
        if (g.pair(p) != d)
            fail("dart " + std::to_string(d) + ": pair(pair(d)) != d");
    }
    for (NodeId v = 0; v < g.vertex_count(); ++v) {
        for (std::uint32_t p = 0; p < g.degree(v); ++p) {
            DartId d = g.dart_at(v, p);
            if (d == kNoDart) {
                fail("vertex " + std::to_string(v) + ": port " + std::to_string(p) + " unassigned");
                continue;
            }
            if (d >= g.dart_count() || g.dart(d).vertex != v || g.dart(d).port != p)
                fail("vertex " + std::to_string(v) + ": port " + std::to_string(p) +
                     " inconsistent with dart table");
        }
    }
    return rep;
}

// splitmix64; small, deterministic, and identical on every platform.
Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    return n ? next() % n : 0;
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Rng Rng::fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0xd1342543de82ef95ull));
}

namespace {

std::vector<std::vector<std::uint32_t>> random_port_perms(const PortLabeledGraph& g, Rng& rng) {
    std::vector<std::vector<std::uint32_t>> perms(g.vertex_count());
    for (NodeId v = 0; v < g.vertex_count(); ++v) {
        perms[v].resize(g.degree(v));
        std::iota(perms[v].begin(), perms[v].end(), 0u);
        shuffle(perms[v], rng);
    }
    return perms;
}

}  // namespace

PortLabeledGraph relabel_ports(const PortLabeledGraph& g,
                               const std::vector<std::vector<std::uint32_t>>& perms) {
    std::vector<Dart> darts(g.dart_count());
    std::vector<DartId> pair(g.dart_count());
    for (DartId d = 0; d < g.dart_count(); ++d) {
        const Dart& old = g.dart(d);
        darts[d] = Dart{old.vertex, perms[old.vertex][old.port]};
        pair[d] = g.pair(d);
    }
    auto out = PortLabeledGraph::from_raw(g.vertex_count(), std::move(darts), std::move(pair));
    out.set_namespace_size(g.namespace_size());
    return out;
}

std::optional<GraphFamily> family_from_name(const std::string& name) {
    if (name == "path") return GraphFamily::Path;
    if (name == "cycle") return GraphFamily::Cycle;
    if (name == "complete") return GraphFamily::Complete;
    if (name == "erdos_renyi") return GraphFamily::ErdosRenyi;
    if (name == "unit_disk") return GraphFamily::UnitDisk;
    if (name == "star") return GraphFamily::Star;
    return std::nullopt;
}

std::string family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::Path: return "path";
        case GraphFamily::Cycle: return "cycle";
        case GraphFamily::Complete: return "complete";
        case GraphFamily::ErdosRenyi: return "erdos_renyi";
        case GraphFamily::UnitDisk: return "unit_disk";
        case GraphFamily::Star: return "star";
    }
    return "?";
}

PortLabeledGraph generate(const GenerateParams& params, std::uint64_t seed) {
    const std::uint32_t n = params.size;
    if (n == 0) throw std::invalid_argument("size must be positive");
    GraphBuilder b(n);
    Rng rng(seed);
    switch (params.family) {
        case GraphFamily::Path:
            for (NodeId v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
            break;
        case GraphFamily::Cycle:
            if (n == 1) {
                b.add_edge(0, 0);
            } else {
                for (NodeId v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
            }
            break;
        case GraphFamily::Complete:
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v);
            break;
        case GraphFamily::ErdosRenyi: {
            if (params.p < 0.0 || params.p > 1.0)
                throw std::invalid_argument("p must be in [0,1]");
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v)
                    if (rng.unit() < params.p) b.add_edge(u, v);
            break;
        }
        case GraphFamily::UnitDisk: {
            if (params.radius <= 0.0) throw std::invalid_argument("radius must be positive");
            std::vector<std::pair<double, double>> pts(n);
            for (auto& [x, y] : pts) {
                x = rng.unit();
                y = rng.unit();
            }
            const double r2 = params.radius * params.radius;
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v) {
                    double dx = pts[u].first - pts[v].first;
                    double dy = pts[u].second - pts[v].second;
                    if (dx * dx + dy * dy <= r2) b.add_edge(u, v);
                }
            break;
        }
        case GraphFamily::Star:
            for (NodeId v = 1; v < n; ++v) b.add_edge(0, v);
            break;
    }
    PortLabeledGraph g = b.build();
    Rng label_rng = rng.fork(0x6c6162656cull);
    return relabel_ports(g, random_port_perms(g, label_rng));
}

PortLabeledGraph random_cubic_multigraph(NodeId n, Rng& rng, bool connected) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("cubic order must be positive and even");
    for (;;) {
        std::vector<DartId> slots(3 * n);
        std::iota(slots.begin(), slots.end(), 0u);
        shuffle(slots, rng);
        std::vector<Dart> darts(3 * n);
        std::vector<DartId> pair(3 * n);
        for (DartId d = 0; d < 3 * n; ++d) darts[d] = Dart{d / 3, d % 3};
        for (std::size_t i = 0; i < slots.size(); i += 2) {
            pair[slots[i]] = slots[i + 1];
            pair[slots[i + 1]] = slots[i];
        }
        auto g = PortLabeledGraph::from_raw(n, std::move(darts), std::move(pair));
        if (!connected || is_connected(g)) return g;
    }
}

std::vector<NodeId> bfs_component(const PortLabeledGraph& g, NodeId s) {
    if (s >= g.vertex_count()) throw std::invalid_argument("unknown source vertex");
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<NodeId> queue{s}, out;
    seen[s] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        NodeId v = queue[qi];
        out.push_back(v);
        for (std::uint32_t p = 0; p < g.degree(v); ++p) {
            NodeId w = g.head(g.dart_at(v, p));
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_connected(const PortLabeledGraph& g) {
    if (g.vertex_count() == 0) return true;
    return bfs_component(g, 0).size() == g.vertex_count();
}

// --- enumeration ---------------------------------------------------------

namespace {

struct MultiGraph {
    std::uint32_t n;
    std::vector<std::uint32_t> loops;              // loops per vertex (0 or 1 for cubic)
    std::vector<std::vector<std::uint32_t>> mult;  // multiplicity matrix
};

bool multigraph_connected(const MultiGraph& m) {
    std::vector<bool> seen(m.n, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint32_t count = 0;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        ++count;
        for (std::uint32_t u = 0; u < m.n; ++u)
            if (u != v && m.mult[v][u] > 0 && !seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return count == m.n;
}

std::string encode_under(const MultiGraph& m, const std::vector<std::uint32_t>& perm) {
    std::string s;
    s.reserve(m.n * (m.n + 1));
    for (std::uint32_t v = 0; v < m.n; ++v) s.push_back(static_cast<char>('0' + m.loops[perm[v]]));
    for (std::uint32_t v = 0; v < m.n; ++v)
        for (std::uint32_t u = v + 1; u < m.n; ++u)
            s.push_back(static_cast<char>('0' + m.mult[perm[v]][perm[u]]));
    return s;
}

std::string canonical(const MultiGraph& m) {
    std::vector<std::uint32_t> perm(m.n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::string best;
    do {
        std::string s = encode_under(m, perm);
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(m.n) + ":" + best;
}

PortLabeledGraph to_port_graph(const MultiGraph& m) {
    GraphBuilder b(m.n);
    for (std::uint32_t v = 0; v < m.n; ++v)
        for (std::uint32_t k = 0; k < m.loops[v]; ++k) b.add_edge(v, v);
    for (std::uint32_t v = 0; v < m.n; ++v)
        for (std::uint32_t u = v; u < m.n; ++u)
            if (u != v)
                for (std::uint32_t k = 0; k < m.mult[v][u]; ++k) b.add_edge(v, u);
    return b.build();
}

// Fill the strict-upper-triangle multiplicities row by row so that each
// vertex ends with degree exactly 3.
void enumerate_fill(MultiGraph& m, std::vector<std::uint32_t>& remaining, std::uint32_t v,
                    std::uint32_t u, std::vector<CubicClass>& out,
                    std::vector<std::string>& seen) {
    if (v == m.n) {
        if (!multigraph_connected(m)) return;
        std::string canon = canonical(m);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end()) return;
        seen.push_back(canon);
        out.push_back(CubicClass{to_port_graph(m)});
        return;
    }
    if (u >= m.n) {
        if (remaining[v] != 0) return;
        enumerate_fill(m, remaining, v + 1, v + 2, out, seen);
        return;
    }
    std::uint32_t cap = std::min(remaining[v], remaining[u]);
    for (std::uint32_t k = 0; k <= cap; ++k) {
        m.mult[v][u] = m.mult[u][v] = k;
        remaining[v] -= k;
        remaining[u] -= k;
        enumerate_fill(m, remaining, v, u + 1, out, seen);
        remaining[v] += k;
        remaining[u] += k;
        m.mult[v][u] = m.mult[u][v] = 0;
    }
}

}  // namespace

std::vector<CubicClass> enumerate_cubic(std::uint32_t max_vertices) {
    if (max_vertices < 2 || max_vertices % 2 != 0)
        throw std::invalid_argument("max_vertices must be even and >= 2");
    std::vector<CubicClass> out;
    for (std::uint32_t n = 2; n <= max_vertices; n += 2) {
        std::vector<std::string> seen;
        // Loop placement first (degree 3 admits at most one loop per vertex),
        // then edge multiplicities.
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            MultiGraph m{n, std::vector<std::uint32_t>(n, 0),
                         std::vector<std::vector<std::uint32_t>>(n, std::vector<std::uint32_t>(n, 0))};
            std::vector<std::uint32_t> remaining(n, 3);
            for (std::uint32_t v = 0; v < n; ++v)
                if (mask & (1u << v)) {
                    m.loops[v] = 1;
                    remaining[v] = 1;
                }
            enumerate_fill(m, remaining, 0, 1, out, seen);
        }
    }
    return out;
}

std::string canonical_form(const PortLabeledGraph& g) {
    MultiGraph m{g.vertex_count(), std::vector<std::uint32_t>(g.vertex_count(), 0),
                 std::vector<std::vector<std::uint32_t>>(
                     g.vertex_count(), std::vector<std::uint32_t>(g.vertex_count(), 0))};
    for (DartId d = 0; d < g.dart_count(); ++d) {
        DartId p = g.pair(d);
        if (p < d) continue;
        NodeId u = g.tail(d), v = g.tail(p);
        if (u == v)
            m.loops[u] += 1;
        else {
            m.mult[u][v] += 1;
            m.mult[v][u] += 1;
        }
    }
    return canonical(m);
}

namespace {

void exhaustive_labelings(const PortLabeledGraph& g, std::vector<std::vector<std::uint32_t>>& perms,
                          NodeId v, const std::function<bool(const PortLabeledGraph&)>& fn,
                          bool& keep_going) {
    if (!keep_going) return;
    if (v == g.vertex_count()) {
        keep_going = fn(relabel_ports(g, perms));
        return;
    }
    std::vector<std::uint32_t> perm(g.degree(v));
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        perms[v] = perm;
        exhaustive_labelings(g, perms, v + 1, fn, keep_going);
        if (!keep_going) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

void for_each_labeling(const PortLabeledGraph& g, const LabelingOptions& opts,
                       const std::function<bool(const PortLabeledGraph&)>& fn) {
    if (opts.mode == LabelingMode::Exhaustive) {
        std::vector<std::vector<std::uint32_t>> perms(g.vertex_count());
        bool keep_going = true;
        exhaustive_labelings(g, perms, 0, fn, keep_going);
        return;
    }
    Rng rng(opts.seed);
    for (std::uint32_t i = 0; i < opts.samples; ++i) {
        if (!fn(relabel_ports(g, random_port_perms(g, rng)))) return;
    }
}

// --- serialization -------------------------------------------------------

void write_graph(std::ostream& out, const PortLabeledGraph& g) {
    struct Line {
        NodeId a, b;
        std::uint32_t pa, pb;
    };
    std::vector<Line> lines;
    for (DartId d = 0; d < g.dart_count(); ++d) {
        DartId q = g.pair(d);
        if (q < d) continue;
        NodeId u = g.tail(d), v = g.tail(q);
        std::uint32_t pu = g.port_of(d), pv = g.port_of(q);
        if (v < u || (v == u && pv < pu)) {
            std::swap(u, v);
            std::swap(pu, pv);
        }
        lines.push_back({u, v, pu, pv});
    }
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        return std::tie(x.a, x.pa, x.b, x.pb) < std::tie(y.a, y.pa, y.b, y.pb);
    });
    out << g.vertex_count() << ' ' << lines.size() << '\n';
    for (const Line& l : lines)
        out << l.a << ' ' << l.pa << ' ' << l.b << ' ' << l.pb << '\n';
}

PortLabeledGraph read_graph(std::istream& in) {
    std::uint32_t n = 0;
    std::size_t m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("graph parse error: missing header");
    GraphBuilder b(n);
    for (std::size_t i = 0; i < m; ++i) {
        NodeId u, v;
        std::uint32_t pu, pv;
        if (!(in >> u >> pu >> v >> pv))
            throw std::runtime_error("graph parse error: edge line " + std::to_string(i));
        b.add_edge_with_ports(u, pu, v, pv);
    }
    PortLabeledGraph g = b.build();
    auto rep = validate(g);
    if (!rep.ok) throw std::runtime_error("graph file invalid: " + rep.violations.front());
    return g;
}

void write_graph_file(const std::string& path, const PortLabeledGraph& g) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    write_graph(f, g);
}

PortLabeledGraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return read_graph(f);
}

}  // namespace uesnet

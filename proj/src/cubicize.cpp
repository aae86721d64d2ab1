#include "uesnet/cubicize.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace uesnet {

CubicizedGraph reduce_to_cubic(const PortLabeledGraph& g, std::uint64_t label_seed) {
    CubicizedGraph cub;
    cub.gadget.resize(g.vertex_count());

    auto new_gadget_vertex = [&](NodeId owner) {
        NodeId gv = static_cast<NodeId>(cub.owner.size());
        cub.owner.push_back(owner);
        cub.gadget[owner].push_back(gv);
        return gv;
    };
    for (NodeId v = 0; v < g.vertex_count(); ++v) {
        std::uint32_t d = g.degree(v);
        std::uint32_t count = d >= 3 ? d : (d == 1 ? 1 : 2);
        for (std::uint32_t k = 0; k < count; ++k) new_gadget_vertex(v);
    }

    GraphBuilder b(static_cast<NodeId>(cub.owner.size()));
    for (NodeId v = 0; v < g.vertex_count(); ++v) {
        const auto& gvs = cub.gadget[v];
        std::uint32_t d = g.degree(v);
        if (d >= 3) {
            // Gadget cycle; port 1 = next, port 2 = previous.
            for (std::uint32_t k = 0; k < d; ++k)
                b.add_edge_with_ports(gvs[k], 1, gvs[(k + 1) % d], 2);
        } else if (d == 2) {
            b.add_edge_with_ports(gvs[0], 1, gvs[1], 1);
            b.add_edge_with_ports(gvs[0], 2, gvs[1], 2);
        } else if (d == 1) {
            b.add_edge_with_ports(gvs[0], 1, gvs[0], 2);
        } else {
            b.add_edge_with_ports(gvs[0], 0, gvs[1], 0);
            b.add_edge_with_ports(gvs[0], 1, gvs[0], 2);
            b.add_edge_with_ports(gvs[1], 1, gvs[1], 2);
        }
    }
    // External edges: the original dart (v, p) lands on port 0 of the p-th
    // gadget vertex of v.
    for (DartId dd = 0; dd < g.dart_count(); ++dd) {
        DartId q = g.pair(dd);
        if (q < dd) continue;
        const Dart& a = g.dart(dd);
        const Dart& z = g.dart(q);
        b.add_edge_with_ports(cub.gadget[a.vertex][a.port], 0, cub.gadget[z.vertex][z.port], 0);
    }
    cub.gprime = b.build();
    cub.gprime.set_namespace_size(cub.gprime.vertex_count());

    if (label_seed != 0) {
        Rng rng(label_seed);
        std::vector<std::vector<std::uint32_t>> perms(cub.gprime.vertex_count());
        for (NodeId gv = 0; gv < cub.gprime.vertex_count(); ++gv) {
            perms[gv] = {0, 1, 2};
            shuffle(perms[gv], rng);
        }
        cub.gprime = relabel_ports(cub.gprime, perms);
    }
    return cub;
}

const std::vector<NodeId>& lift_target(const CubicizedGraph& cub, NodeId t) {
    if (t >= cub.gadget.size()) throw std::invalid_argument("unknown original vertex");
    return cub.gadget[t];
}

void write_mapping(std::ostream& out, const CubicizedGraph& cub) {
    for (NodeId gv = 0; gv < cub.owner.size(); ++gv)
        out << gv << ' ' << cub.owner[gv] << '\n';
}

void write_mapping_file(const std::string& path, const CubicizedGraph& cub) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    write_mapping(f, cub);
}

}  // namespace uesnet

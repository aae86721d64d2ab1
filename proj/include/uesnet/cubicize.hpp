#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uesnet/graph.hpp"

namespace uesnet {

// Degree reduction: every vertex of G is replaced by a gadget so that the
// result G' is exactly 3-regular. Gadget shapes by original degree:
//   deg >= 3: cycle of deg(v) gadget vertices, one external dart each
//   deg == 2: two gadget vertices joined by a parallel edge pair,
//             one external dart each
//   deg == 1: one gadget vertex: the external edge plus a self-loop
//   deg == 0: two gadget vertices joined by one edge, a self-loop on each
struct CubicizedGraph {
    PortLabeledGraph gprime;
    std::vector<NodeId> owner;                // gadget vertex -> original vertex
    std::vector<std::vector<NodeId>> gadget;  // original vertex -> gadget vertices
};

// Canonical port labels (external dart = port 0, remaining darts in cycle
// order); label_seed != 0 additionally shuffles ports at every gadget
// vertex (adversarial-labeling mode).
CubicizedGraph reduce_to_cubic(const PortLabeledGraph& g, std::uint64_t label_seed = 0);

// Gadget vertices of an original vertex; delivery to any of them counts
// as delivery to t.
const std::vector<NodeId>& lift_target(const CubicizedGraph& cub, NodeId t);

// Mapping serialization: one line per gadget vertex, "gadget_vertex owner_vertex".
void write_mapping(std::ostream& out, const CubicizedGraph& cub);
void write_mapping_file(const std::string& path, const CubicizedGraph& cub);

}  // namespace uesnet

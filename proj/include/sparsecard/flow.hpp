#ifndef SPARSECARD_FLOW_HPP
#define SPARSECARD_FLOW_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sparsecard/gadget.hpp"

namespace sparsecard {

// Directed flow network with fixed-point integer capacities. Arcs are stored
// in pairs: arc 2i and 2i+1 are each other's reverses. Parallel arcs between
// the same ordered node pair are merged additively at build time and the arc
// list is kept sorted by (tail, head) so identical inputs build identical
// networks.
struct FlowNetwork {
    std::int64_t node_count = 0;
    std::int64_t source = 0;
    std::int64_t sink = 0;
    std::int64_t scale = 1;

    std::vector<std::int32_t> arc_tail;  // per arc pair index: forward tail
    std::vector<std::int32_t> arc_head;  // per arc pair index: forward head
    std::vector<std::int64_t> arc_cap;   // per arc pair index: forward capacity

    std::int64_t arc_pair_count() const { return static_cast<std::int64_t>(arc_cap.size()); }
    std::int64_t total_capacity() const;
};

struct CutResult {
    std::vector<bool> source_side;   // size node_count; true = s-side
    std::int64_t cut_value_scaled = 0;
    double cut_value = 0.0;          // descaled
    std::int64_t max_flow_scaled = 0;
};

// One component's gadget placed at global ground-node indices.
struct PlacedGadget {
    GadgetGraph graph;
    std::vector<std::int64_t> support;  // global indices, one per local support node
};

struct BuildStats {
    std::size_t arcs_rounded_to_zero = 0;
    std::size_t merged_parallel = 0;
};

// Assemble the global reduced graph: ground nodes 0..n-1, then each
// component's auxiliary nodes in component order, then s, t. Real weights w
// become llround(w * scale).
FlowNetwork build_network(const std::vector<PlacedGadget>& gadgets, std::int64_t n,
                          std::int64_t scale, BuildStats* stats = nullptr);

// Exact min s-t cut via highest-label push-relabel (gap heuristic + periodic
// global relabeling), first phase only. The source side is the complement of
// the nodes that can still reach t in the residual graph, which is the
// minimal source side among minimum cuts.
CutResult min_st_cut(const FlowNetwork& net);

// Force membership by adding arcs with an effectively infinite capacity
// (total capacity + 1). Pure: returns a new network.
FlowNetwork pin_nodes(const FlowNetwork& net, const std::vector<std::int64_t>& to_source,
                      const std::vector<std::int64_t>& to_sink);

// DIMACS max-flow format, 1-indexed, with a "c scale <s>" comment carrying
// the fixed-point multiplier. Round trips bit-exactly.
void write_dimacs(const FlowNetwork& net, std::ostream& out);
FlowNetwork read_dimacs(std::istream& in);

}  // namespace sparsecard

#endif

#pragma once

#include <cstdint>
#include <vector>

#include "core/alloc/types.hpp"
#include "core/flow/flow_network.hpp"

namespace dhms::alloc {

// Flow network for one allocation instance plus the bookkeeping needed to
// read assignments back out of edge flows.
struct BuiltNetwork {
    flow::FlowNetwork net;
    // One entry per preference edge, parallel to the suffix of net.edges()
    // starting at first_pref_edge.
    struct PrefEdge {
        std::size_t edge_index;
        std::size_t student_index;  // into AllocationInstance::students
        std::size_t room_index;     // into AllocationInstance::rooms
        std::uint32_t rank;
    };
    std::vector<PrefEdge> pref_edges;
};

// Super-source -> students (capacity 1), students -> preferred rooms up to
// the given rank, rooms -> super-sink at capacity. Under the all-or-nothing
// policy grouped students draw their supply through a per-group gate node of
// capacity |group|.
BuiltNetwork build_network(const AllocationInstance& inst, std::uint32_t tier);

// Tiered max-flow: rank-1 edges are solved first, lower-ranked edges are
// opened one rank at a time and the flow re-augmented, so earlier matches are
// never dropped (though they may be rerouted among equally-ranked-or-better
// rooms). Instances are partitioned into independent room-block components
// first; `jobs` controls how many components solve concurrently.
AllocationResult allocate(const AllocationInstance& inst, unsigned jobs = 1);

// Manual comparator: ascending seniority_rank, each student takes the
// highest-ranked preference that still has capacity. Groups are ignored.
AllocationResult allocate_baseline(const AllocationInstance& inst);

// Jain fairness index (sum x)^2 / (n * sum x^2). All-zero input is defined
// as 1.0 (everyone equally has nothing). Empty input is a StructuralError.
double jain_index(const std::vector<double>& scores);

// Satisfaction metrics for an assignment map; also used for imported results.
AllocationMetrics compute_metrics(const AllocationInstance& inst,
                                  const std::map<std::string, Assignment>& assignments);

}  // namespace dhms::alloc

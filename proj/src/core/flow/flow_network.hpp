#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dhms::flow {

using NodeId = std::uint32_t;

struct Edge {
    NodeId from;
    NodeId to;
    std::uint64_t capacity;
};

// Capacitated directed graph with designated source/sink. Immutable once the
// edges are in place; parallel edges are allowed and act additively.
class FlowNetwork {
  public:
    FlowNetwork(std::uint32_t node_count, NodeId source, NodeId sink);

    // Rejects self-loops and out-of-range endpoints. Returns the edge index.
    std::size_t add_edge(NodeId from, NodeId to, std::uint64_t capacity);

    std::uint32_t node_count() const { return node_count_; }
    NodeId source() const { return source_; }
    NodeId sink() const { return sink_; }
    const std::vector<Edge>& edges() const { return edges_; }

  private:
    std::uint32_t node_count_;
    NodeId source_;
    NodeId sink_;
    std::vector<Edge> edges_;
};

struct FlowResult {
    std::uint64_t max_flow_value = 0;
    std::vector<std::uint64_t> edge_flows;  // parallel to FlowNetwork::edges()
    std::uint64_t augmentation_count = 0;
};

// Edmonds-Karp: shortest augmenting paths by BFS. Deterministic: nodes on a
// BFS level are expanded lowest-id first and each adjacency list is scanned
// in edge insertion order.
FlowResult max_flow(const FlowNetwork& net);

// Source side of a minimum cut: nodes reachable from the source in the
// residual graph of a maximum flow. Throws StructuralError when `result`
// is not a valid maximum flow for `net`.
std::vector<NodeId> min_cut(const FlowNetwork& net, const FlowResult& result);

// Diagnostic text dump, one edge per line: "from to cap flow".
std::string dump_flow(const FlowNetwork& net, const FlowResult& result);

}  // namespace dhms::flow

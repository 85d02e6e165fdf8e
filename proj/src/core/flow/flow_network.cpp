#include "core/flow/flow_network.hpp"

#include <sstream>

#include "core/flow/residual_solver.hpp"
#include "core/util/errors.hpp"

namespace dhms::flow {

FlowNetwork::FlowNetwork(std::uint32_t node_count, NodeId source, NodeId sink)
    : node_count_(node_count), source_(source), sink_(sink) {
    if (node_count < 2) throw StructuralError("flow network needs at least 2 nodes");
    if (source >= node_count || sink >= node_count)
        throw StructuralError("source/sink id out of range");
    if (source == sink) throw StructuralError("source and sink must differ");
}

std::size_t FlowNetwork::add_edge(NodeId from, NodeId to, std::uint64_t capacity) {
    if (from >= node_count_ || to >= node_count_)
        throw StructuralError("edge endpoint out of range: " + std::to_string(from) + "->" +
                              std::to_string(to));
    if (from == to) throw StructuralError("self-loop edges are not allowed");
    edges_.push_back({from, to, capacity});
    return edges_.size() - 1;
}

FlowResult max_flow(const FlowNetwork& net) {
    ResidualSolver solver(net.node_count(), net.source(), net.sink());
    for (const Edge& e : net.edges()) solver.add_edge(e.from, e.to, e.capacity);
    solver.augment_to_max();

    FlowResult out;
    out.max_flow_value = solver.flow_value();
    out.augmentation_count = solver.augmentations();
    out.edge_flows.resize(net.edges().size());
    for (std::size_t i = 0; i < net.edges().size(); ++i) out.edge_flows[i] = solver.edge_flow(i);
    return out;
}

namespace {

void check_result_matches(const FlowNetwork& net, const FlowResult& result) {
    const auto& es = net.edges();
    if (result.edge_flows.size() != es.size())
        throw StructuralError("flow result does not match network: edge count differs");
    std::vector<std::int64_t> balance(net.node_count(), 0);
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (result.edge_flows[i] > es[i].capacity)
            throw StructuralError("flow result exceeds capacity on edge " + std::to_string(i));
        balance[es[i].from] -= static_cast<std::int64_t>(result.edge_flows[i]);
        balance[es[i].to] += static_cast<std::int64_t>(result.edge_flows[i]);
    }
    for (std::uint32_t v = 0; v < net.node_count(); ++v) {
        if (v == net.source() || v == net.sink()) continue;
        if (balance[v] != 0)
            throw StructuralError("flow result violates conservation at node " + std::to_string(v));
    }
    if (balance[net.source()] != -static_cast<std::int64_t>(result.max_flow_value))
        throw StructuralError("flow result value does not match source out-flow");
}

}  // namespace

std::vector<NodeId> min_cut(const FlowNetwork& net, const FlowResult& result) {
    check_result_matches(net, result);

    std::vector<std::vector<NodeId>> radj(net.node_count());
    const auto& es = net.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (es[i].capacity - result.edge_flows[i] > 0) radj[es[i].from].push_back(es[i].to);
        if (result.edge_flows[i] > 0) radj[es[i].to].push_back(es[i].from);
    }

    std::vector<char> seen(net.node_count(), 0);
    std::vector<NodeId> stack{net.source()};
    seen[net.source()] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : radj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    if (seen[net.sink()])
        throw StructuralError("flow result is not maximal: sink reachable in residual graph");

    std::vector<NodeId> side;
    for (NodeId v = 0; v < net.node_count(); ++v)
        if (seen[v]) side.push_back(v);
    return side;
}

std::string dump_flow(const FlowNetwork& net, const FlowResult& result) {
    if (result.edge_flows.size() != net.edges().size())
        throw StructuralError("flow result does not match network: edge count differs");
    std::ostringstream out;
    const auto& es = net.edges();
    for (std::size_t i = 0; i < es.size(); ++i)
        out << es[i].from << ' ' << es[i].to << ' ' << es[i].capacity << ' '
            << result.edge_flows[i] << '\n';
    return out.str();
}

}  // namespace dhms::flow

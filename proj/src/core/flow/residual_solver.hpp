#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/flow/flow_network.hpp"

namespace dhms::flow {

// Shortest-augmenting-path workhorse behind max_flow and the tiered
// allocation engine. Forward edge i occupies residual slot 2i, its reverse
// slot 2i+1. Capacities may be raised between augmentation runs; committed
// flow is never discarded, so staged solvers keep earlier matches.
class ResidualSolver {
  public:
    ResidualSolver(std::uint32_t node_count, NodeId source, NodeId sink)
        : source_(source), sink_(sink), adj_(node_count) {}

    std::size_t add_edge(NodeId from, NodeId to, std::uint64_t capacity) {
        std::size_t index = original_.size();
        adj_[from].push_back(to_.size());
        to_.push_back(to);
        cap_.push_back(capacity);
        adj_[to].push_back(to_.size());
        to_.push_back(from);
        cap_.push_back(0);
        original_.push_back(capacity);
        return index;
    }

    void raise_capacity(std::size_t edge_index, std::uint64_t delta) {
        cap_[2 * edge_index] += delta;
        original_[edge_index] += delta;
    }

    // Augments until no path remains at current capacities; returns the flow
    // added by this call. BFS expands each level lowest-node-id first and
    // scans adjacency in insertion order, which pins down tie-breaking.
    std::uint64_t augment_to_max() {
        const std::uint32_t n = static_cast<std::uint32_t>(adj_.size());
        std::vector<std::size_t> parent_slot(n);
        std::vector<char> seen(n);
        std::vector<NodeId> level, next;
        std::uint64_t added = 0;

        while (true) {
            std::fill(seen.begin(), seen.end(), 0);
            seen[source_] = 1;
            level.assign(1, source_);
            bool found = false;
            while (!level.empty() && !found) {
                std::sort(level.begin(), level.end());
                next.clear();
                for (NodeId u : level) {
                    for (std::size_t slot : adj_[u]) {
                        if (cap_[slot] == 0) continue;
                        NodeId v = to_[slot];
                        if (seen[v]) continue;
                        seen[v] = 1;
                        parent_slot[v] = slot;
                        if (v == sink_) {
                            found = true;
                            break;
                        }
                        next.push_back(v);
                    }
                    if (found) break;
                }
                level.swap(next);
            }
            if (!found) break;

            std::uint64_t push = std::numeric_limits<std::uint64_t>::max();
            for (NodeId v = sink_; v != source_;) {
                std::size_t slot = parent_slot[v];
                push = std::min(push, cap_[slot]);
                v = to_[slot ^ 1];
            }
            for (NodeId v = sink_; v != source_;) {
                std::size_t slot = parent_slot[v];
                cap_[slot] -= push;
                cap_[slot ^ 1] += push;
                v = to_[slot ^ 1];
            }
            added += push;
            augmentations_ += 1;
        }
        flow_value_ += added;
        return added;
    }

    std::uint64_t flow_value() const { return flow_value_; }
    std::uint64_t augmentations() const { return augmentations_; }
    std::uint64_t edge_flow(std::size_t edge_index) const {
        return original_[edge_index] - cap_[2 * edge_index];
    }

  private:
    NodeId source_;
    NodeId sink_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<NodeId> to_;
    std::vector<std::uint64_t> cap_;
    std::vector<std::uint64_t> original_;
    std::uint64_t flow_value_ = 0;
    std::uint64_t augmentations_ = 0;
};

}  // namespace dhms::flow

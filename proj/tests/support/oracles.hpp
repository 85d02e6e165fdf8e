#pragma once

// Independent reference implementations used to cross-check the engine.
// These deliberately avoid the production code paths: cuts are enumerated
// exhaustively, matchings are found by brute-force search, and the priority
// formula is restated from scratch.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "core/alloc/types.hpp"
#include "core/flow/flow_network.hpp"
#include "core/triage/complaint.hpp"
#include "core/util/rng.hpp"

namespace oracles {

// Minimum s-t cut capacity by enumerating every subset containing the source
// and excluding the sink. Only usable for small node counts.
inline std::uint64_t min_cut_enumeration(const dhms::flow::FlowNetwork& net) {
    const std::uint32_t n = net.node_count();
    std::vector<std::uint32_t> free_nodes;
    for (std::uint32_t v = 0; v < n; ++v)
        if (v != net.source() && v != net.sink()) free_nodes.push_back(v);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    const std::size_t subsets = std::size_t{1} << free_nodes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<char> in_source_side(n, 0);
        in_source_side[net.source()] = 1;
        for (std::size_t b = 0; b < free_nodes.size(); ++b)
            if (mask & (std::size_t{1} << b)) in_source_side[free_nodes[b]] = 1;
        std::uint64_t cut = 0;
        for (const auto& e : net.edges())
            if (in_source_side[e.from] && !in_source_side[e.to]) cut += e.capacity;
        best = std::min(best, cut);
    }
    return best;
}

// Maximum number of students that can be assigned to a preferred room,
// respecting room capacities, by plain backtracking.
inline std::size_t max_matching_bruteforce(const dhms::alloc::AllocationInstance& inst) {
    std::map<std::string, std::uint32_t> remaining;
    for (const auto& r : inst.rooms) remaining[r.id] += r.capacity;

    std::size_t best = 0;
    auto recurse = [&](auto&& self, std::size_t i, std::size_t assigned) -> void {
        if (i == inst.students.size()) {
            best = std::max(best, assigned);
            return;
        }
        if (assigned + (inst.students.size() - i) <= best) return;  // cannot improve
        self(self, i + 1, assigned);  // leave student i unassigned
        for (const std::string& room : inst.students[i].preferences) {
            auto it = remaining.find(room);
            if (it == remaining.end() || it->second == 0) continue;
            it->second -= 1;
            self(self, i + 1, assigned + 1);
            it->second += 1;
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

// The scoring rule restated independently of the triage module.
inline double priority_reference(const dhms::triage::Complaint& c,
                                 const std::map<dhms::triage::Category, double>& weights,
                                 double age_saturation_hours, double impact_saturation,
                                 dhms::util::Timestamp now) {
    double t = weights.count(c.category) ? weights.at(c.category)
                                         : weights.at(dhms::triage::Category::General);
    double impact = std::min(1.0, c.affected_count / impact_saturation);
    double age_hours = static_cast<double>(now - c.created_at) / 3600.0;
    double age = std::min(1.0, age_hours / age_saturation_hours);
    return 0.4 * t + 0.3 * impact + 0.3 * age;
}

// Random capacitated network for max-flow/min-cut equivalence checks.
inline dhms::flow::FlowNetwork random_network(dhms::util::Rng& rng, std::uint32_t max_nodes,
                                              std::uint64_t max_capacity) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(max_nodes - 1));
    dhms::flow::FlowNetwork net(n, 0, n - 1);
    std::uint32_t edge_count = 1 + static_cast<std::uint32_t>(rng.below(2 * n));
    for (std::uint32_t i = 0; i < edge_count; ++i) {
        std::uint32_t from = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t to = static_cast<std::uint32_t>(rng.below(n));
        if (from == to) continue;
        net.add_edge(from, to, rng.below(max_capacity + 1));
    }
    if (net.edges().empty()) net.add_edge(0, n - 1, 1);
    return net;
}

// Random small allocation instance; contention controlled by capacity.
inline dhms::alloc::AllocationInstance random_instance(dhms::util::Rng& rng,
                                                       std::uint32_t max_students,
                                                       std::uint32_t max_rooms) {
    dhms::alloc::AllocationInstance inst;
    std::uint32_t rooms = 1 + static_cast<std::uint32_t>(rng.below(max_rooms));
    std::uint32_t students = 1 + static_cast<std::uint32_t>(rng.below(max_students));
    for (std::uint32_t r = 0; r < rooms; ++r)
        inst.rooms.push_back({"R" + std::to_string(r), r % 2 ? "B" : "A",
                              1 + static_cast<std::uint32_t>(rng.below(2))});
    for (std::uint32_t s = 0; s < students; ++s) {
        dhms::alloc::Student st;
        st.id = "S" + std::to_string(s);
        st.seniority_rank = s + 1;
        st.block = "A";
        std::uint32_t len = 1 + static_cast<std::uint32_t>(rng.below(std::min(rooms, 4u)));
        auto picks = rng.sample_without_replacement(rooms, len);
        for (std::size_t p : picks) st.preferences.push_back(inst.rooms[p].id);
        inst.students.push_back(std::move(st));
    }
    return inst;
}

}  // namespace oracles

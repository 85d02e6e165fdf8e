#include "core/alloc/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "core/flow/residual_solver.hpp"
#include "core/util/errors.hpp"
#include "core/util/parallel.hpp"

namespace dhms::alloc {

void AllocationInstance::validate() const {
    std::unordered_map<std::string, std::size_t> room_index;
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        const Room& r = rooms[i];
        if (r.id.empty()) throw StructuralError("room with empty id");
        if (r.capacity < 1) throw StructuralError("room " + r.id + " has capacity 0");
        if (!room_index.emplace(r.id, i).second)
            throw StructuralError("duplicate room id: " + r.id);
    }
    std::unordered_set<std::string> student_ids;
    std::unordered_set<std::uint32_t> ranks;
    for (const Student& s : students) {
        if (s.id.empty()) throw StructuralError("student with empty id");
        if (!student_ids.insert(s.id).second)
            throw StructuralError("duplicate student id: " + s.id);
        if (!ranks.insert(s.seniority_rank).second)
            throw StructuralError("duplicate seniority_rank " + std::to_string(s.seniority_rank) +
                                  " (student " + s.id + ")");
        if (s.preferences.empty())
            throw StructuralError("student " + s.id + " has an empty preference list");
        std::unordered_set<std::string> seen;
        for (const std::string& room_id : s.preferences) {
            if (!room_index.count(room_id))
                throw StructuralError("student " + s.id + " prefers unknown room " + room_id);
            if (!seen.insert(room_id).second)
                throw StructuralError("student " + s.id + " lists room " + room_id + " twice");
        }
    }
}

namespace {

// Students are always walked most-senior-first so that BFS tie-breaking
// favors lower seniority_rank, then lexicographic id.
std::vector<std::size_t> seniority_order(const std::vector<Student>& students) {
    std::vector<std::size_t> order(students.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (students[a].seniority_rank != students[b].seniority_rank)
            return students[a].seniority_rank < students[b].seniority_rank;
        return students[a].id < students[b].id;
    });
    return order;
}

std::uint32_t max_preference_length(const AllocationInstance& inst) {
    std::size_t m = 0;
    for (const Student& s : inst.students) m = std::max(m, s.preferences.size());
    return static_cast<std::uint32_t>(m);
}

struct Layout {
    std::vector<std::size_t> order;                       // seniority order
    std::unordered_map<std::string, std::size_t> room_at; // room id -> index
    std::vector<std::string> gate_ids;                    // sorted group ids (all-or-nothing)
    std::uint32_t student_base = 1;                       // node of order[0]
    std::uint32_t room_base = 0;
    std::uint32_t gate_base = 0;
    std::uint32_t sink = 0;
    std::uint32_t node_count = 0;
};

Layout make_layout(const AllocationInstance& inst) {
    Layout lay;
    lay.order = seniority_order(inst.students);
    for (std::size_t i = 0; i < inst.rooms.size(); ++i) lay.room_at[inst.rooms[i].id] = i;
    if (inst.group_policy == GroupPolicy::AllOrNothing) {
        std::set<std::string> gids;
        for (const Student& s : inst.students)
            if (s.group_id) gids.insert(*s.group_id);
        lay.gate_ids.assign(gids.begin(), gids.end());
    }
    lay.student_base = 1;
    lay.room_base = lay.student_base + static_cast<std::uint32_t>(inst.students.size());
    lay.gate_base = lay.room_base + static_cast<std::uint32_t>(inst.rooms.size());
    lay.sink = lay.gate_base + static_cast<std::uint32_t>(lay.gate_ids.size());
    lay.node_count = lay.sink + 1;
    return lay;
}

}  // namespace

BuiltNetwork build_network(const AllocationInstance& inst, std::uint32_t tier) {
    if (inst.students.empty() || inst.rooms.empty())
        throw StructuralError("cannot build a network for an empty instance");
    std::uint32_t max_len = max_preference_length(inst);
    if (tier < 1 || tier > max_len)
        throw StructuralError("tier " + std::to_string(tier) + " outside [1, " +
                              std::to_string(max_len) + "]");

    Layout lay = make_layout(inst);
    BuiltNetwork built{flow::FlowNetwork(lay.node_count, 0, lay.sink), {}};

    // Supply edges. Gates (group intermediates) first, then ungrouped
    // students, both in deterministic order.
    std::unordered_map<std::string, std::uint32_t> gate_node;
    std::unordered_map<std::string, std::uint32_t> group_size;
    for (const Student& s : inst.students)
        if (s.group_id) group_size[*s.group_id] += 1;
    for (std::size_t g = 0; g < lay.gate_ids.size(); ++g) {
        std::uint32_t node = lay.gate_base + static_cast<std::uint32_t>(g);
        gate_node[lay.gate_ids[g]] = node;
        built.net.add_edge(0, node, group_size[lay.gate_ids[g]]);
    }
    for (std::size_t pos = 0; pos < lay.order.size(); ++pos) {
        const Student& s = inst.students[lay.order[pos]];
        std::uint32_t snode = lay.student_base + static_cast<std::uint32_t>(pos);
        if (inst.group_policy == GroupPolicy::AllOrNothing && s.group_id)
            built.net.add_edge(gate_node[*s.group_id], snode, 1);
        else
            built.net.add_edge(0, snode, 1);
    }

    // Preference edges, rank order within each student.
    for (std::size_t pos = 0; pos < lay.order.size(); ++pos) {
        const Student& s = inst.students[lay.order[pos]];
        std::uint32_t snode = lay.student_base + static_cast<std::uint32_t>(pos);
        for (std::uint32_t r = 0; r < s.preferences.size() && r < tier; ++r) {
            std::size_t room_idx = lay.room_at.at(s.preferences[r]);
            std::size_t edge = built.net.add_edge(
                snode, lay.room_base + static_cast<std::uint32_t>(room_idx), 1);
            built.pref_edges.push_back({edge, lay.order[pos], room_idx, r + 1});
        }
    }

    for (std::size_t i = 0; i < inst.rooms.size(); ++i)
        built.net.add_edge(lay.room_base + static_cast<std::uint32_t>(i), lay.sink,
                           inst.rooms[i].capacity);
    return built;
}

namespace {

// Tiered solve of one (sub-)instance. Preference edges open one rank at a
// time; committed flow persists across ranks, so a student matched at rank r
// can only ever be rerouted among rooms of rank <= the tier in which later
// augmentation happens, never dropped.
std::map<std::string, Assignment> solve_tiered(const AllocationInstance& inst) {
    std::uint32_t max_len = max_preference_length(inst);
    BuiltNetwork built = build_network(inst, max_len);

    flow::ResidualSolver solver(built.net.node_count(), built.net.source(), built.net.sink());
    std::unordered_set<std::size_t> pref_edge_set;
    for (const auto& pe : built.pref_edges) pref_edge_set.insert(pe.edge_index);
    const auto& edges = built.net.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        solver.add_edge(edges[i].from, edges[i].to,
                        pref_edge_set.count(i) ? 0 : edges[i].capacity);

    for (std::uint32_t rank = 1; rank <= max_len; ++rank) {
        for (const auto& pe : built.pref_edges)
            if (pe.rank == rank) solver.raise_capacity(pe.edge_index, 1);
        solver.augment_to_max();
    }

    std::map<std::string, Assignment> assignments;
    for (const auto& pe : built.pref_edges) {
        if (solver.edge_flow(pe.edge_index) == 1) {
            const Student& s = inst.students[pe.student_index];
            assignments[s.id] = Assignment{inst.rooms[pe.room_index].id, pe.rank, false};
        }
    }
    return assignments;
}

// Rooms are grouped by block; blocks bridged by a preference list (or by a
// group whose members' lists span blocks) must be solved together, which is
// what makes per-block solving exact when preferences stay within one block.
struct BlockComponents {
    std::vector<AllocationInstance> parts;  // deterministic order
};

BlockComponents partition_by_block(const AllocationInstance& inst) {
    std::map<std::string, std::size_t> block_ix;
    for (const Room& r : inst.rooms) block_ix.emplace(r.block, block_ix.size());

    std::vector<std::size_t> uf(block_ix.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { uf[find(a)] = find(b); };

    std::unordered_map<std::string, std::size_t> room_block;
    for (const Room& r : inst.rooms) room_block[r.id] = block_ix[r.block];

    std::unordered_map<std::string, std::size_t> group_anchor;
    for (const Student& s : inst.students) {
        std::size_t first = room_block[s.preferences.front()];
        for (const std::string& p : s.preferences) unite(first, room_block[p]);
        if (s.group_id) {
            auto [it, fresh] = group_anchor.emplace(*s.group_id, first);
            if (!fresh) unite(it->second, first);
        }
    }

    std::vector<AllocationInstance> parts;
    std::unordered_map<std::size_t, std::size_t> root_to_part;
    for (const auto& [block, ix] : block_ix) {
        std::size_t root = find(ix);
        if (!root_to_part.count(root)) {
            root_to_part[root] = parts.size();
            parts.push_back(AllocationInstance{{}, {}, inst.group_policy});
        }
    }
    for (const Room& r : inst.rooms) parts[root_to_part[find(block_ix[r.block])]].rooms.push_back(r);
    for (const Student& s : inst.students)
        parts[root_to_part[find(room_block[s.preferences.front()])]].students.push_back(s);

    // Order parts by their smallest block name so merging is reproducible.
    std::sort(parts.begin(), parts.end(), [](const AllocationInstance& a, const AllocationInstance& b) {
        std::string ka, kb;
        for (const Room& r : a.rooms) ka = ka.empty() ? r.block : std::min(ka, r.block);
        for (const Room& r : b.rooms) kb = kb.empty() ? r.block : std::min(kb, r.block);
        return ka < kb;
    });
    return BlockComponents{std::move(parts)};
}

}  // namespace

AllocationResult allocate(const AllocationInstance& inst, unsigned jobs) {
    inst.validate();
    if (inst.students.empty() || inst.rooms.empty())
        throw StructuralError("cannot allocate an empty instance");

    auto t0 = std::chrono::steady_clock::now();
    BlockComponents comps = partition_by_block(inst);

    std::vector<std::map<std::string, Assignment>> partial(comps.parts.size());
    util::parallel_for(jobs, comps.parts.size(), [&](std::size_t i) {
        if (!comps.parts[i].students.empty()) partial[i] = solve_tiered(comps.parts[i]);
    });

    AllocationResult result;
    for (auto& part : partial)
        for (auto& [sid, a] : part) result.assignments.emplace(sid, std::move(a));

    result.metrics = compute_metrics(inst, result.assignments);
    result.metrics.solve_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

AllocationResult allocate_baseline(const AllocationInstance& inst) {
    inst.validate();
    auto t0 = std::chrono::steady_clock::now();

    std::unordered_map<std::string, std::uint32_t> remaining;
    for (const Room& r : inst.rooms) remaining[r.id] += r.capacity;

    AllocationResult result;
    for (std::size_t pos : seniority_order(inst.students)) {
        const Student& s = inst.students[pos];
        for (std::uint32_t r = 0; r < s.preferences.size(); ++r) {
            auto it = remaining.find(s.preferences[r]);
            if (it != remaining.end() && it->second > 0) {
                it->second -= 1;
                result.assignments[s.id] = Assignment{s.preferences[r], r + 1, false};
                break;
            }
        }
    }

    result.metrics = compute_metrics(inst, result.assignments);
    result.metrics.solve_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

double jain_index(const std::vector<double>& scores) {
    if (scores.empty()) throw StructuralError("jain index of an empty list");
    double sum = 0.0, sum_sq = 0.0;
    for (double x : scores) {
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0.0) return 1.0;  // all-zero: perfectly even
    return (sum * sum) / (static_cast<double>(scores.size()) * sum_sq);
}

AllocationMetrics compute_metrics(const AllocationInstance& inst,
                                  const std::map<std::string, Assignment>& assignments) {
    AllocationMetrics m;
    if (inst.students.empty()) return m;

    std::unordered_map<std::string, std::string> room_block;
    for (const Room& r : inst.rooms) room_block[r.id] = r.block;

    std::size_t top_two = 0;
    std::vector<double> satisfaction;
    satisfaction.reserve(inst.students.size());
    std::map<std::string, std::vector<const Student*>> groups;

    for (const Student& s : inst.students) {
        if (s.group_id) groups[*s.group_id].push_back(&s);
        auto it = assignments.find(s.id);
        if (it == assignments.end()) {
            m.unassigned_count += 1;
            satisfaction.push_back(0.0);
            continue;
        }
        std::uint32_t rank = it->second.rank;
        if (!it->second.overflow && rank >= 1 && rank <= 2) ++top_two;
        double len = static_cast<double>(s.preferences.size());
        satisfaction.push_back(it->second.overflow ? 0.0 : len + 1.0 - static_cast<double>(rank));
    }

    m.top_two_rate = static_cast<double>(top_two) / static_cast<double>(inst.students.size());
    m.jain_index = jain_index(satisfaction);

    if (groups.empty()) {
        m.group_satisfaction_rate = 1.0;
    } else {
        std::size_t satisfied = 0;
        for (const auto& [gid, members] : groups) {
            bool ok = true;
            std::string block;
            for (const Student* s : members) {
                auto it = assignments.find(s->id);
                if (it == assignments.end()) {
                    ok = false;
                    break;
                }
                const std::string& b = room_block[it->second.room_id];
                if (block.empty())
                    block = b;
                else if (b != block) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++satisfied;
        }
        m.group_satisfaction_rate = static_cast<double>(satisfied) / static_cast<double>(groups.size());
    }
    return m;
}

}  // namespace dhms::alloc

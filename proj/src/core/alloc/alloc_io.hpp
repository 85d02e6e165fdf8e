#pragma once

#include <string>

#include "core/alloc/types.hpp"
#include "core/util/jsonu.hpp"

namespace dhms::alloc {

// Instance document: {schema_version, group_policy, students[], rooms[]}.
AllocationInstance instance_from_json(const util::json& j);
util::json instance_to_json(const AllocationInstance& inst);

// Result document: {schema_version, assignments[], unassigned[], metrics{}}.
// Wall-clock solve time is deliberately not persisted so that re-running a
// command on identical inputs yields byte-identical files.
util::json result_to_json(const AllocationInstance& inst, const AllocationResult& result);
AllocationResult result_from_json(const util::json& j);

// One row per student, sorted by id: student_id, room_id, rank_received.
std::string result_to_csv(const AllocationInstance& inst, const AllocationResult& result);

}  // namespace dhms::alloc

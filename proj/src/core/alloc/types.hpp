#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dhms::alloc {

struct Student {
    std::string id;
    std::uint32_t seniority_rank = 1;  // 1 = most senior; unique per instance
    std::string block;
    std::string department;
    std::vector<std::string> preferences;  // room ids, rank 1 first
    std::optional<std::string> group_id;
};

struct Room {
    std::string id;
    std::string block;
    std::uint32_t capacity = 1;
};

enum class GroupPolicy { AllOrNothing, BestEffort };

struct AllocationInstance {
    std::vector<Student> students;
    std::vector<Room> rooms;
    GroupPolicy group_policy = GroupPolicy::AllOrNothing;

    // Throws StructuralError / ValidationError when invariants are broken:
    // unique ids, unique seniority ranks, non-empty duplicate-free preference
    // lists referring to existing rooms, capacities >= 1.
    void validate() const;
};

struct Assignment {
    std::string room_id;
    std::uint32_t rank = 0;  // 1-based position in the student's list
    bool overflow = false;   // room outside the preference list (never set by
                             // the engine itself; kept for importers)
};

struct AllocationMetrics {
    double top_two_rate = 0.0;
    double group_satisfaction_rate = 1.0;
    double jain_index = 1.0;
    std::uint32_t unassigned_count = 0;
    double solve_time_seconds = 0.0;
};

struct AllocationResult {
    std::map<std::string, Assignment> assignments;  // student id -> assignment
    AllocationMetrics metrics;
};

}  // namespace dhms::alloc

#include "core/alloc/alloc_io.hpp"

#include <algorithm>

#include "core/util/csvu.hpp"
#include "core/util/errors.hpp"

namespace dhms::alloc {

using util::get_or;
using util::json;
using util::require;

AllocationInstance instance_from_json(const json& j) {
    AllocationInstance inst;
    std::string policy = get_or<std::string>(j, "group_policy", "all_or_nothing");
    if (policy == "all_or_nothing")
        inst.group_policy = GroupPolicy::AllOrNothing;
    else if (policy == "best_effort")
        inst.group_policy = GroupPolicy::BestEffort;
    else
        throw StructuralError("unknown group_policy: " + policy);

    for (const json& js : require<json>(j, "students")) {
        Student s;
        s.id = require<std::string>(js, "id");
        s.seniority_rank = require<std::uint32_t>(js, "seniority_rank");
        s.block = get_or<std::string>(js, "block", "");
        s.department = get_or<std::string>(js, "department", "");
        s.preferences = require<std::vector<std::string>>(js, "preferences");
        if (js.contains("group_id") && !js.at("group_id").is_null())
            s.group_id = js.at("group_id").get<std::string>();
        inst.students.push_back(std::move(s));
    }
    for (const json& jr : require<json>(j, "rooms")) {
        Room r;
        r.id = require<std::string>(jr, "id");
        r.block = get_or<std::string>(jr, "block", "");
        r.capacity = require<std::uint32_t>(jr, "capacity");
        inst.rooms.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

json instance_to_json(const AllocationInstance& inst) {
    json j;
    j["schema_version"] = 1;
    j["group_policy"] =
        inst.group_policy == GroupPolicy::AllOrNothing ? "all_or_nothing" : "best_effort";
    j["students"] = json::array();
    for (const Student& s : inst.students) {
        json js{{"id", s.id},
                {"seniority_rank", s.seniority_rank},
                {"block", s.block},
                {"department", s.department},
                {"preferences", s.preferences}};
        if (s.group_id) js["group_id"] = *s.group_id;
        j["students"].push_back(std::move(js));
    }
    j["rooms"] = json::array();
    for (const Room& r : inst.rooms)
        j["rooms"].push_back({{"id", r.id}, {"block", r.block}, {"capacity", r.capacity}});
    return j;
}

json result_to_json(const AllocationInstance& inst, const AllocationResult& result) {
    json j;
    j["schema_version"] = 1;
    j["assignments"] = json::array();
    for (const auto& [sid, a] : result.assignments)
        j["assignments"].push_back(
            {{"student_id", sid}, {"room_id", a.room_id}, {"rank", a.rank}, {"overflow", a.overflow}});

    std::vector<std::string> unassigned;
    for (const Student& s : inst.students)
        if (!result.assignments.count(s.id)) unassigned.push_back(s.id);
    std::sort(unassigned.begin(), unassigned.end());
    j["unassigned"] = unassigned;

    const AllocationMetrics& m = result.metrics;
    j["metrics"] = {{"top_two_rate", m.top_two_rate},
                    {"group_satisfaction_rate", m.group_satisfaction_rate},
                    {"jain_index", m.jain_index},
                    {"unassigned_count", m.unassigned_count}};
    return j;
}

AllocationResult result_from_json(const json& j) {
    AllocationResult r;
    for (const json& ja : require<json>(j, "assignments")) {
        Assignment a;
        a.room_id = require<std::string>(ja, "room_id");
        a.rank = require<std::uint32_t>(ja, "rank");
        a.overflow = get_or<bool>(ja, "overflow", false);
        r.assignments[require<std::string>(ja, "student_id")] = std::move(a);
    }
    if (j.contains("metrics")) {
        const json& m = j.at("metrics");
        r.metrics.top_two_rate = get_or<double>(m, "top_two_rate", 0.0);
        r.metrics.group_satisfaction_rate = get_or<double>(m, "group_satisfaction_rate", 1.0);
        r.metrics.jain_index = get_or<double>(m, "jain_index", 1.0);
        r.metrics.unassigned_count = get_or<std::uint32_t>(m, "unassigned_count", 0);
    }
    return r;
}

std::string result_to_csv(const AllocationInstance& inst, const AllocationResult& result) {
    std::vector<std::string> ids;
    ids.reserve(inst.students.size());
    for (const Student& s : inst.students) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());

    std::string out = util::csv_row({"student_id", "room_id", "rank_received"});
    for (const std::string& sid : ids) {
        auto it = result.assignments.find(sid);
        if (it == result.assignments.end())
            out += util::csv_row({sid, "", ""});
        else
            out += util::csv_row({sid, it->second.room_id, std::to_string(it->second.rank)});
    }
    return out;
}

}  // namespace dhms::alloc

#include "core/triage/complaint_log.hpp"

#include <fstream>

#include "core/util/errors.hpp"

namespace dhms::triage {

util::json created_event(const Complaint& c) {
    return util::json{{"at", util::format_iso8601(c.created_at)},
                      {"id", c.id},
                      {"event", "created"},
                      {"complaint", complaint_to_json(c)}};
}

util::json transition_event(const std::string& id, Lifecycle next, const std::string& note,
                            util::Timestamp at) {
    return util::json{{"at", util::format_iso8601(at)},
                      {"id", id},
                      {"event", "transition"},
                      {"diff", {{"status", to_string(next)}, {"note", note}}}};
}

void append_event(const std::string& path, const util::json& event) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoError("cannot append to complaint log: " + path);
    out << event.dump() << '\n';
}

std::vector<Complaint> replay_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open complaint log: " + path);

    std::map<std::string, std::size_t> index;
    std::vector<Complaint> complaints;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        util::json j = util::parse_json_text(line, path + ":" + std::to_string(lineno));
        std::string id = util::require<std::string>(j, "id");
        std::string event = util::require<std::string>(j, "event");
        if (event == "created") {
            if (index.count(id))
                throw StructuralError(path + ":" + std::to_string(lineno) +
                                      ": duplicate created event for " + id);
            index[id] = complaints.size();
            complaints.push_back(complaint_from_json(j.at("complaint")));
        } else if (event == "transition") {
            auto it = index.find(id);
            if (it == index.end())
                throw StructuralError(path + ":" + std::to_string(lineno) +
                                      ": transition for unknown complaint " + id);
            const util::json& diff = util::require<util::json>(j, "diff");
            auto next = lifecycle_from_string(util::require<std::string>(diff, "status"));
            if (!next)
                throw StructuralError(path + ":" + std::to_string(lineno) + ": bad status");
            complaints[it->second] = transition(
                complaints[it->second], *next, util::get_or<std::string>(diff, "note", ""),
                util::parse_iso8601(util::require<std::string>(j, "at")));
        } else {
            throw StructuralError(path + ":" + std::to_string(lineno) + ": unknown event '" +
                                  event + "'");
        }
    }
    return complaints;
}

}  // namespace dhms::triage

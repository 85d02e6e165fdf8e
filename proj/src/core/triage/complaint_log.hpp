#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/triage/complaint.hpp"

namespace dhms::triage {

// Append-only JSON-lines complaint log. One event per line:
//   {"at": ..., "id": ..., "event": "created", "complaint": {...}}
//   {"at": ..., "id": ..., "event": "transition",
//    "diff": {"status": ..., "note": ...}}
// Replaying a log reproduces the complaint states in event order.

util::json created_event(const Complaint& c);
util::json transition_event(const std::string& id, Lifecycle next, const std::string& note,
                            util::Timestamp at);

void append_event(const std::string& path, const util::json& event);

// Replays a log into final complaint states (ordered by first appearance).
// Unknown ids or illegal transitions surface as the usual errors.
std::vector<Complaint> replay_log(const std::string& path);

}  // namespace dhms::triage

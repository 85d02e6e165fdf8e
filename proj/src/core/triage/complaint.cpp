#include "core/triage/complaint.hpp"

#include "core/util/errors.hpp"

namespace dhms::triage {

const std::vector<Category>& all_categories() {
    static const std::vector<Category> cats = {
        Category::Electrical, Category::Water,   Category::Plumbing, Category::Sanitation,
        Category::Civil,      Category::General, Category::Other};
    return cats;
}

std::string to_string(Category c) {
    switch (c) {
        case Category::Electrical: return "electrical";
        case Category::Water: return "water";
        case Category::Plumbing: return "plumbing";
        case Category::Sanitation: return "sanitation";
        case Category::Civil: return "civil";
        case Category::General: return "general";
        case Category::Other: return "other";
    }
    return "other";
}

std::optional<Category> category_from_string(const std::string& s) {
    for (Category c : all_categories())
        if (to_string(c) == s) return c;
    return std::nullopt;
}

int category_code(Category c) { return static_cast<int>(c); }

std::string to_string(Lifecycle s) {
    switch (s) {
        case Lifecycle::Pending: return "Pending";
        case Lifecycle::InProgress: return "InProgress";
        case Lifecycle::Resolved: return "Resolved";
        case Lifecycle::Verified: return "Verified";
    }
    return "Pending";
}

std::optional<Lifecycle> lifecycle_from_string(const std::string& s) {
    if (s == "Pending") return Lifecycle::Pending;
    if (s == "InProgress" || s == "In-Progress") return Lifecycle::InProgress;
    if (s == "Resolved") return Lifecycle::Resolved;
    if (s == "Verified") return Lifecycle::Verified;
    return std::nullopt;
}

bool transition_allowed(Lifecycle from, Lifecycle to) {
    if (from == Lifecycle::Pending && to == Lifecycle::InProgress) return true;
    if (from == Lifecycle::InProgress && to == Lifecycle::Resolved) return true;
    if (from == Lifecycle::Resolved && to == Lifecycle::Verified) return true;
    if (from == Lifecycle::InProgress && to == Lifecycle::Pending) return true;  // reopen
    return false;
}

void Complaint::validate() const {
    if (id.empty()) throw StructuralError("complaint with empty id");
    if (affected_count < 1) throw StructuralError("complaint " + id + ": affected_count must be >= 1");
    for (std::size_t i = 1; i < history.size(); ++i)
        if (history[i].at < history[i - 1].at)
            throw StructuralError("complaint " + id + ": history timestamps go backwards");
    bool closed = status == Lifecycle::Resolved || status == Lifecycle::Verified;
    if (closed != resolved_at.has_value())
        throw StructuralError("complaint " + id + ": resolved_at must be present iff resolved");
}

Complaint make_complaint(std::string id, Category category, std::string description,
                         std::string student_id, std::string room_id, std::string block,
                         util::Timestamp created_at, std::uint32_t affected_count) {
    Complaint c;
    c.id = std::move(id);
    c.category = category;
    c.description = std::move(description);
    c.student_id = std::move(student_id);
    c.room_id = std::move(room_id);
    c.block = std::move(block);
    c.created_at = created_at;
    c.affected_count = affected_count;
    c.history.push_back({created_at, Lifecycle::Pending, "filed"});
    return c;
}

Complaint transition(const Complaint& c, Lifecycle next, const std::string& note,
                     util::Timestamp at) {
    if (!transition_allowed(c.status, next))
        throw TransitionError("illegal transition " + to_string(c.status) + " -> " +
                              to_string(next) + " on complaint " + c.id);
    if (!c.history.empty() && at < c.history.back().at)
        throw StructuralError("transition at " + util::format_iso8601(at) +
                              " precedes last history entry on complaint " + c.id);
    Complaint out = c;
    out.status = next;
    out.history.push_back({at, next, note});
    if (next == Lifecycle::Resolved) out.resolved_at = at;
    if (next == Lifecycle::Pending) out.resolved_at.reset();
    return out;
}

util::json complaint_to_json(const Complaint& c) {
    util::json j{{"id", c.id},
                 {"category", to_string(c.category)},
                 {"description", c.description},
                 {"student_id", c.student_id},
                 {"room_id", c.room_id},
                 {"block", c.block},
                 {"created_at", util::format_iso8601(c.created_at)},
                 {"status", to_string(c.status)},
                 {"affected_count", c.affected_count}};
    j["history"] = util::json::array();
    for (const HistoryEntry& h : c.history)
        j["history"].push_back({{"at", util::format_iso8601(h.at)},
                                {"status", to_string(h.status)},
                                {"note", h.note}});
    if (c.resolved_at) j["resolved_at"] = util::format_iso8601(*c.resolved_at);
    return j;
}

Complaint complaint_from_json(const util::json& j) {
    Complaint c;
    c.id = util::require<std::string>(j, "id");
    std::string cat = util::require<std::string>(j, "category");
    auto parsed = category_from_string(cat);
    if (!parsed) throw StructuralError("unknown complaint category: " + cat);
    c.category = *parsed;
    c.description = util::get_or<std::string>(j, "description", "");
    c.student_id = util::get_or<std::string>(j, "student_id", "");
    c.room_id = util::get_or<std::string>(j, "room_id", "");
    c.block = util::get_or<std::string>(j, "block", "");
    c.created_at = util::parse_iso8601(util::require<std::string>(j, "created_at"));
    std::string st = util::get_or<std::string>(j, "status", "Pending");
    auto status = lifecycle_from_string(st);
    if (!status) throw StructuralError("unknown lifecycle status: " + st);
    c.status = *status;
    c.affected_count = util::get_or<std::uint32_t>(j, "affected_count", 1);
    if (j.contains("history")) {
        for (const util::json& jh : j.at("history")) {
            HistoryEntry h;
            h.at = util::parse_iso8601(util::require<std::string>(jh, "at"));
            auto hs = lifecycle_from_string(util::require<std::string>(jh, "status"));
            if (!hs) throw StructuralError("unknown lifecycle status in history");
            h.status = *hs;
            h.note = util::get_or<std::string>(jh, "note", "");
            c.history.push_back(std::move(h));
        }
    }
    if (j.contains("resolved_at") && !j.at("resolved_at").is_null())
        c.resolved_at = util::parse_iso8601(j.at("resolved_at").get<std::string>());
    c.validate();
    return c;
}

std::vector<Complaint> complaints_from_json(const util::json& j) {
    const util::json& arr = j.is_array() ? j : util::require<util::json>(j, "complaints");
    std::vector<Complaint> out;
    out.reserve(arr.size());
    for (const util::json& jc : arr) out.push_back(complaint_from_json(jc));
    return out;
}

util::json complaints_to_json(const std::vector<Complaint>& cs) {
    util::json arr = util::json::array();
    for (const Complaint& c : cs) arr.push_back(complaint_to_json(c));
    return arr;
}

}  // namespace dhms::triage

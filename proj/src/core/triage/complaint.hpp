#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/util/jsonu.hpp"
#include "core/util/timeu.hpp"

namespace dhms::triage {

enum class Category { Electrical, Water, Plumbing, Sanitation, Civil, General, Other };

const std::vector<Category>& all_categories();
std::string to_string(Category c);
std::optional<Category> category_from_string(const std::string& s);
int category_code(Category c);  // stable small-integer encoding for features

enum class Lifecycle { Pending, InProgress, Resolved, Verified };

std::string to_string(Lifecycle s);
std::optional<Lifecycle> lifecycle_from_string(const std::string& s);

// Exactly four legal moves: Pending->InProgress, InProgress->Resolved,
// Resolved->Verified, and the reopen InProgress->Pending.
bool transition_allowed(Lifecycle from, Lifecycle to);

struct HistoryEntry {
    util::Timestamp at = 0;
    Lifecycle status = Lifecycle::Pending;
    std::string note;
};

struct Complaint {
    std::string id;
    Category category = Category::General;
    std::string description;
    std::string student_id;
    std::string room_id;
    std::string block;
    util::Timestamp created_at = 0;
    Lifecycle status = Lifecycle::Pending;
    std::uint32_t affected_count = 1;
    std::vector<HistoryEntry> history;
    std::optional<util::Timestamp> resolved_at;

    void validate() const;
};

// Fresh Pending complaint with the creation event on its history.
Complaint make_complaint(std::string id, Category category, std::string description,
                         std::string student_id, std::string room_id, std::string block,
                         util::Timestamp created_at, std::uint32_t affected_count = 1);

// Returns the updated record; the input is untouched. Throws TransitionError
// for illegal moves, StructuralError when `at` precedes the last history
// entry. Entering Resolved stamps resolved_at.
Complaint transition(const Complaint& c, Lifecycle next, const std::string& note,
                     util::Timestamp at);

util::json complaint_to_json(const Complaint& c);
Complaint complaint_from_json(const util::json& j);

std::vector<Complaint> complaints_from_json(const util::json& j);
util::json complaints_to_json(const std::vector<Complaint>& cs);

}  // namespace dhms::triage

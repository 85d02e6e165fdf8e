#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/triage/complaint.hpp"

namespace dhms::forecast {

struct WeeklyPoint {
    util::Timestamp week_start = 0;  // midnight Monday, UTC
    std::uint32_t count = 0;         // y
    bool imputed = false;            // true for interior weeks with no data
};

struct WeeklySeries {
    std::string category;  // empty = all categories
    std::string block;     // empty = all blocks
    std::vector<WeeklyPoint> points;

    // Week starts must be strictly increasing and exactly 7 days apart.
    void validate() const;
    std::size_t zero_weeks() const;
};

// Buckets complaints into calendar weeks (Monday start). Interior weeks with
// no complaints appear as imputed zeros; the series spans exactly the first
// through last non-empty week, so leading/trailing empties never occur.
WeeklySeries aggregate_weekly(const std::vector<triage::Complaint>& complaints,
                              const std::optional<triage::Category>& category,
                              const std::optional<std::string>& block);

util::json series_to_json(const WeeklySeries& s);
WeeklySeries series_from_json(const util::json& j);

}  // namespace dhms::forecast

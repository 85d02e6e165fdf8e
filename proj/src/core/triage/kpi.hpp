#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/triage/complaint.hpp"

namespace dhms::triage {

struct KpiReport {
    bool empty = true;                    // no complaints fell inside the window
    std::size_t total = 0;                // complaints created inside the window
    std::size_t resolved = 0;             // of those, resolved by window end
    double mean_resolution_hours = 0.0;
    double open_over_24h_fraction = 0.0;  // open at window end and older than 24h
    std::map<std::string, std::size_t> by_category;
    std::map<std::string, std::size_t> by_status;
};

// Considers complaints created inside [window_start, window_end]; a complaint
// counts as resolved when its resolved_at falls at or before window_end.
KpiReport kpi_report(const std::vector<Complaint>& complaints, util::Timestamp window_start,
                     util::Timestamp window_end);

util::json kpi_to_json(const KpiReport& r);
std::string kpi_to_csv(const KpiReport& r);

}  // namespace dhms::triage

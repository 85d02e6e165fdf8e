#pragma once

#include <map>
#include <vector>

#include "core/triage/complaint.hpp"

namespace dhms::triage {

// Priority = 0.4*T + 0.3*I + 0.3*A.
//   T: type weight looked up per category,
//   I: affected_count / impact_saturation, capped at 1,
//   A: age / age_saturation, capped at 1.
struct PriorityWeights {
    std::map<Category, double> type_weights;
    double coefficient_type = 0.4;
    double coefficient_impact = 0.3;
    double coefficient_age = 0.3;
    util::Duration age_saturation = 72 * util::kHour;
    std::uint32_t impact_saturation = 50;

    // Published weights electrical/water/general; the remaining categories
    // are documented extrapolations and can be overridden in config.
    static PriorityWeights defaults();

    // Coefficients must sum to 1 and every weight must be in [0,1].
    void validate() const;

    // Missing categories fall back to the weight of `general` (logged once
    // per process to stderr).
    double weight_for(Category c) const;
};

double priority_score(const Complaint& c, const PriorityWeights& w, util::Timestamp now);

struct QueueEntry {
    Complaint complaint;
    double score = 0.0;
};

// Open complaints (Pending/InProgress) sorted by descending score; ties go to
// the older complaint, then the smaller id.
std::vector<QueueEntry> triage_queue(const std::vector<Complaint>& complaints,
                                     const PriorityWeights& w, util::Timestamp now);

}  // namespace dhms::triage

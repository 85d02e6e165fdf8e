#pragma once

#include <unordered_map>

#include "core/alloc/types.hpp"
#include "core/triage/complaint.hpp"
#include "core/workload/spec.hpp"

namespace dhms::workload {

// Deterministic per seed: every random draw comes from split SplitMix64
// streams, never from platform-defined distributions.
alloc::AllocationInstance gen_allocation(const WorkloadSpec& spec);

struct LabeledComplaints {
    std::vector<triage::Complaint> complaints;           // ordered by created_at
    std::unordered_map<std::string, bool> labels;        // id -> planted anomaly?
};

// Weekly Poisson draws modulated by per-category sinusoidal seasonality.
// Planted anomalies carry out-of-pattern features: small-hours submission,
// alert keywords, long hostile descriptions, and recurrence bursts. Labels
// are returned alongside but are written to a separate file by the CLI so
// detectors cannot read them by accident.
LabeledComplaints gen_complaints(const WorkloadSpec& spec);

util::json labels_to_json(const LabeledComplaints& lc);

}  // namespace dhms::workload

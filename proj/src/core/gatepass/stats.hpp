#pragma once

#include <optional>

#include "core/gatepass/pass.hpp"

namespace dhms::gatepass {

struct PassStats {
    bool empty = true;
    std::size_t total_requests = 0;
    std::size_t approved = 0;
    std::size_t rejected = 0;
    double rejection_rate = 0.0;          // rejected / total requests
    std::size_t reuse_incidents = 0;      // RejectedReused scans
    std::size_t tamper_incidents = 0;     // RejectedTampered scans
    std::size_t expired_scans = 0;
    std::size_t accepted_scans = 0;
    double median_decision_hours = 0.0;   // request -> decision
    std::size_t overdue_unreturned = 0;   // lazily expired as of `now`
};

// `now`, when given, applies lazy expiry: approved or exited passes whose
// return deadline has passed count as overdue without mutating the store.
PassStats pass_stats(const std::vector<GatePass>& passes,
                     const std::vector<ScanLogEntry>& scan_log,
                     std::optional<util::Timestamp> now = {});
PassStats pass_stats(const PassStore& store, std::optional<util::Timestamp> now = {});

util::json stats_to_json(const PassStats& s);
std::string stats_to_csv(const PassStats& s);

}  // namespace dhms::gatepass

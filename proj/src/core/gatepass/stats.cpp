#include "core/gatepass/stats.hpp"

#include <algorithm>

#include "core/util/csvu.hpp"

namespace dhms::gatepass {

PassStats pass_stats(const std::vector<GatePass>& passes,
                     const std::vector<ScanLogEntry>& scan_log,
                     std::optional<util::Timestamp> now) {
    PassStats s;
    std::vector<double> decision_hours;
    for (const GatePass& p : passes) {
        s.total_requests += 1;
        if (p.status == PassStatus::Rejected) s.rejected += 1;
        if (p.status != PassStatus::Requested && p.status != PassStatus::Rejected) s.approved += 1;
        if (p.decided_at)
            decision_hours.push_back(static_cast<double>(*p.decided_at - p.requested_at) / 3600.0);
        if (now && *now > p.return_by &&
            (p.status == PassStatus::Approved || p.status == PassStatus::Exited))
            s.overdue_unreturned += 1;
    }
    for (const ScanLogEntry& e : scan_log) {
        switch (e.event.result) {
            case ScanResult::Accepted: s.accepted_scans += 1; break;
            case ScanResult::RejectedReused: s.reuse_incidents += 1; break;
            case ScanResult::RejectedTampered: s.tamper_incidents += 1; break;
            case ScanResult::RejectedExpired: s.expired_scans += 1; break;
            case ScanResult::RejectedUnknown: break;
        }
    }
    if (s.total_requests == 0) return s;
    s.empty = false;
    s.rejection_rate = static_cast<double>(s.rejected) / static_cast<double>(s.total_requests);
    if (!decision_hours.empty()) {
        std::sort(decision_hours.begin(), decision_hours.end());
        std::size_t n = decision_hours.size();
        s.median_decision_hours = n % 2 == 1
                                      ? decision_hours[n / 2]
                                      : 0.5 * (decision_hours[n / 2 - 1] + decision_hours[n / 2]);
    }
    return s;
}

PassStats pass_stats(const PassStore& store, std::optional<util::Timestamp> now) {
    return pass_stats(store.all_passes(), store.scan_log(), now);
}

util::json stats_to_json(const PassStats& s) {
    return util::json{{"empty", s.empty},
                      {"total_requests", s.total_requests},
                      {"approved", s.approved},
                      {"rejected", s.rejected},
                      {"rejection_rate", s.rejection_rate},
                      {"reuse_incidents", s.reuse_incidents},
                      {"tamper_incidents", s.tamper_incidents},
                      {"expired_scans", s.expired_scans},
                      {"accepted_scans", s.accepted_scans},
                      {"median_decision_hours", s.median_decision_hours},
                      {"overdue_unreturned", s.overdue_unreturned}};
}

std::string stats_to_csv(const PassStats& s) {
    std::string out = util::csv_row({"metric", "value"});
    auto row = [&](const std::string& k, const std::string& v) { out += util::csv_row({k, v}); };
    char buf[32];
    row("empty", s.empty ? "true" : "false");
    row("total_requests", std::to_string(s.total_requests));
    row("approved", std::to_string(s.approved));
    row("rejected", std::to_string(s.rejected));
    std::snprintf(buf, sizeof(buf), "%.6f", s.rejection_rate);
    row("rejection_rate", buf);
    row("reuse_incidents", std::to_string(s.reuse_incidents));
    row("tamper_incidents", std::to_string(s.tamper_incidents));
    row("expired_scans", std::to_string(s.expired_scans));
    row("accepted_scans", std::to_string(s.accepted_scans));
    std::snprintf(buf, sizeof(buf), "%.6f", s.median_decision_hours);
    row("median_decision_hours", buf);
    row("overdue_unreturned", std::to_string(s.overdue_unreturned));
    return out;
}

}  // namespace dhms::gatepass

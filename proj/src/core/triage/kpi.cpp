#include "core/triage/kpi.hpp"

#include "core/util/csvu.hpp"

namespace dhms::triage {

KpiReport kpi_report(const std::vector<Complaint>& complaints, util::Timestamp window_start,
                     util::Timestamp window_end) {
    KpiReport r;
    double resolution_sum = 0.0;
    std::size_t open_over_24h = 0;

    for (const Complaint& c : complaints) {
        if (c.created_at < window_start || c.created_at > window_end) continue;
        r.total += 1;
        r.by_category[to_string(c.category)] += 1;
        r.by_status[to_string(c.status)] += 1;

        bool resolved_in_window = c.resolved_at && *c.resolved_at <= window_end;
        if (resolved_in_window) {
            r.resolved += 1;
            resolution_sum += static_cast<double>(*c.resolved_at - c.created_at);
        } else if (window_end - c.created_at > 24 * util::kHour) {
            open_over_24h += 1;
        }
    }

    if (r.total == 0) return r;
    r.empty = false;
    if (r.resolved > 0)
        r.mean_resolution_hours = resolution_sum / static_cast<double>(r.resolved) / 3600.0;
    r.open_over_24h_fraction = static_cast<double>(open_over_24h) / static_cast<double>(r.total);
    return r;
}

util::json kpi_to_json(const KpiReport& r) {
    return util::json{{"empty", r.empty},
                      {"total", r.total},
                      {"resolved", r.resolved},
                      {"mean_resolution_hours", r.mean_resolution_hours},
                      {"open_over_24h_fraction", r.open_over_24h_fraction},
                      {"by_category", r.by_category},
                      {"by_status", r.by_status}};
}

std::string kpi_to_csv(const KpiReport& r) {
    std::string out = util::csv_row({"metric", "value"});
    out += util::csv_row({"empty", r.empty ? "true" : "false"});
    out += util::csv_row({"total", std::to_string(r.total)});
    out += util::csv_row({"resolved", std::to_string(r.resolved)});
    out += util::csv_row({"mean_resolution_hours", std::to_string(r.mean_resolution_hours)});
    out += util::csv_row({"open_over_24h_fraction", std::to_string(r.open_over_24h_fraction)});
    for (const auto& [k, v] : r.by_category)
        out += util::csv_row({"category." + k, std::to_string(v)});
    for (const auto& [k, v] : r.by_status) out += util::csv_row({"status." + k, std::to_string(v)});
    return out;
}

}  // namespace dhms::triage

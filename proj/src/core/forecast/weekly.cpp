#include "core/forecast/weekly.hpp"

#include <algorithm>
#include <map>

#include "core/util/errors.hpp"

namespace dhms::forecast {

void WeeklySeries::validate() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].week_start != points[i - 1].week_start + util::kWeek)
            throw StructuralError("weekly series is not contiguous at index " + std::to_string(i));
}

std::size_t WeeklySeries::zero_weeks() const {
    std::size_t z = 0;
    for (const WeeklyPoint& p : points)
        if (p.count == 0) ++z;
    return z;
}

WeeklySeries aggregate_weekly(const std::vector<triage::Complaint>& complaints,
                              const std::optional<triage::Category>& category,
                              const std::optional<std::string>& block) {
    WeeklySeries series;
    if (category) series.category = triage::to_string(*category);
    if (block) series.block = *block;

    std::map<util::Timestamp, std::uint32_t> buckets;
    for (const triage::Complaint& c : complaints) {
        if (category && c.category != *category) continue;
        if (block && c.block != *block) continue;
        buckets[util::week_start(c.created_at)] += 1;
    }
    if (buckets.empty()) return series;

    util::Timestamp first = buckets.begin()->first;
    util::Timestamp last = buckets.rbegin()->first;
    for (util::Timestamp w = first; w <= last; w += util::kWeek) {
        auto it = buckets.find(w);
        if (it != buckets.end())
            series.points.push_back({w, it->second, false});
        else
            series.points.push_back({w, 0, true});
    }
    return series;
}

util::json series_to_json(const WeeklySeries& s) {
    util::json pts = util::json::array();
    for (const WeeklyPoint& p : s.points)
        pts.push_back({{"ds", util::format_iso_date(p.week_start)},
                       {"y", p.count},
                       {"imputed", p.imputed}});
    return util::json{{"schema_version", 1},
                      {"category", s.category},
                      {"block", s.block},
                      {"points", std::move(pts)}};
}

WeeklySeries series_from_json(const util::json& j) {
    WeeklySeries s;
    s.category = util::get_or<std::string>(j, "category", "");
    s.block = util::get_or<std::string>(j, "block", "");
    for (const util::json& jp : util::require<util::json>(j, "points")) {
        WeeklyPoint p;
        p.week_start = util::parse_iso8601(util::require<std::string>(jp, "ds"));
        p.count = util::require<std::uint32_t>(jp, "y");
        p.imputed = util::get_or<bool>(jp, "imputed", false);
        s.points.push_back(p);
    }
    s.validate();
    return s;
}

}  // namespace dhms::forecast

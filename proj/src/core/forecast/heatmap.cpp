#include "core/forecast/heatmap.hpp"

#include <algorithm>
#include <cstdio>

#include "core/util/csvu.hpp"
#include "core/util/errors.hpp"

namespace dhms::forecast {

std::string to_string(RiskLevel l) {
    switch (l) {
        case RiskLevel::Low: return "low";
        case RiskLevel::Medium: return "medium";
        case RiskLevel::High: return "high";
    }
    return "low";
}

std::vector<HeatmapCell> risk_heatmap(const std::vector<ForecastEntry>& forecasts,
                                      double medium_at, double high_at) {
    if (medium_at > high_at)
        throw ValidationError("heatmap thresholds must satisfy medium_at <= high_at");
    std::vector<HeatmapCell> cells;
    for (const ForecastEntry& e : forecasts) {
        HeatmapCell cell;
        cell.block = e.block;
        cell.category = e.category;
        for (const ForecastPoint& p : e.forecast.horizon) cell.peak = std::max(cell.peak, p.point);
        cell.level = cell.peak >= high_at   ? RiskLevel::High
                     : cell.peak >= medium_at ? RiskLevel::Medium
                                              : RiskLevel::Low;
        cells.push_back(std::move(cell));
    }
    std::sort(cells.begin(), cells.end(), [](const HeatmapCell& a, const HeatmapCell& b) {
        if (a.block != b.block) return a.block < b.block;
        return a.category < b.category;
    });
    return cells;
}

std::string heatmap_to_csv(const std::vector<HeatmapCell>& cells) {
    std::string out = util::csv_row({"block", "category", "peak", "level"});
    for (const HeatmapCell& c : cells) {
        char peak[32];
        std::snprintf(peak, sizeof(peak), "%.6f", c.peak);
        out += util::csv_row({c.block, c.category, peak, to_string(c.level)});
    }
    return out;
}

}  // namespace dhms::forecast

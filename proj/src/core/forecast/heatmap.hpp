#pragma once

#include <string>
#include <vector>

#include "core/forecast/model.hpp"

namespace dhms::forecast {

enum class RiskLevel { Low, Medium, High };

std::string to_string(RiskLevel l);

struct HeatmapCell {
    std::string block;
    std::string category;
    double peak = 0.0;  // max forecast point over the horizon
    RiskLevel level = RiskLevel::Low;
};

struct ForecastEntry {
    std::string block;
    std::string category;
    Forecast forecast;
};

// peak >= high_at -> High, peak >= medium_at -> Medium, else Low.
std::vector<HeatmapCell> risk_heatmap(const std::vector<ForecastEntry>& forecasts,
                                      double medium_at, double high_at);

std::string heatmap_to_csv(const std::vector<HeatmapCell>& cells);

}  // namespace dhms::forecast

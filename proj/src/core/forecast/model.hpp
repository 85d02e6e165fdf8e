#pragma once

#include <vector>

#include "core/forecast/weekly.hpp"

namespace dhms::forecast {

// Additive weekly model fitted by ordinary least squares:
//   y(t) = intercept + slope*t + sum_k a_k sin(2 pi k t / 52)
//                              + sum_k b_k cos(2 pi k t / 52)
// with t the zero-based week index of the training range.
struct ForecastModel {
    std::string category;
    std::string block;
    double intercept = 0.0;
    double slope = 0.0;
    std::vector<double> sin_coef;  // a_k, k = 1..harmonics
    std::vector<double> cos_coef;  // b_k
    std::uint32_t harmonics = 0;
    double period_weeks = 52.0;
    double residual_sigma = 0.0;
    util::Timestamp train_start_week = 0;
    util::Timestamp train_end_week = 0;
    std::uint32_t train_length = 0;
    bool low_confidence = false;  // more than 60% of training weeks were zero

    double eval(double t) const;
};

// Needs at least max(8, 2*harmonics + 2) points. residual_sigma is the
// sample standard deviation of the fit residuals.
ForecastModel fit_model(const WeeklySeries& series, std::uint32_t harmonics);

// Numeric core: fits directly on real-valued observations y[0..n), with t
// measured in weeks from start_week. The series overload quantizes to its
// integer counts first; this entry point keeps exact reconstruction exact.
ForecastModel fit_model_values(const std::vector<double>& y, std::uint32_t harmonics,
                               util::Timestamp start_week);

struct ForecastPoint {
    util::Timestamp week_start = 0;
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct Forecast {
    std::vector<ForecastPoint> horizon;
    bool low_confidence = false;
};

// Point forecasts with a symmetric z * sigma interval (default z covers 80%).
// The interval is computed on the raw prediction first; the point and bounds
// are then floored at zero, keeping lower <= point <= upper.
Forecast predict(const ForecastModel& model, std::uint32_t steps = 8, double z = 1.282);

util::json model_to_json(const ForecastModel& m);
ForecastModel model_from_json(const util::json& j);

std::string forecast_to_csv(const Forecast& f);

}  // namespace dhms::forecast

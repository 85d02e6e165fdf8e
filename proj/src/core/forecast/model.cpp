#include "core/forecast/model.hpp"

#include <algorithm>
#include <cmath>

#include "core/util/csvu.hpp"
#include "core/util/errors.hpp"

namespace dhms::forecast {

namespace {

// Dense solve by Gaussian elimination with partial pivoting, in extended
// precision; the system here is tiny (2 + 2K unknowns).
std::vector<double> solve_linear(std::vector<std::vector<long double>> a,
                                 std::vector<long double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12L)
            throw FitError("design matrix is singular; series has no usable variation");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            long double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        long double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = static_cast<double>(acc / a[i][i]);
    }
    return x;
}

std::vector<double> design_row(double t, std::uint32_t harmonics, double period) {
    std::vector<double> row;
    row.reserve(2 + 2 * harmonics);
    row.push_back(1.0);
    row.push_back(t);
    for (std::uint32_t k = 1; k <= harmonics; ++k) {
        double w = 2.0 * M_PI * static_cast<double>(k) * t / period;
        row.push_back(std::sin(w));
        row.push_back(std::cos(w));
    }
    return row;
}

}  // namespace

double ForecastModel::eval(double t) const {
    double v = intercept + slope * t;
    for (std::uint32_t k = 1; k <= harmonics; ++k) {
        double w = 2.0 * M_PI * static_cast<double>(k) * t / period_weeks;
        v += sin_coef[k - 1] * std::sin(w) + cos_coef[k - 1] * std::cos(w);
    }
    return v;
}

ForecastModel fit_model_values(const std::vector<double>& y, std::uint32_t harmonics,
                               util::Timestamp start_week) {
    const std::size_t n = y.size();
    const std::size_t min_len = std::max<std::size_t>(8, 2 * harmonics + 2);
    if (n < min_len)
        throw FitError("series has " + std::to_string(n) + " weeks; need at least " +
                       std::to_string(min_len));

    // The trend column is centered before forming the normal equations, which
    // keeps them well conditioned; the intercept is shifted back afterwards.
    const double t_center = static_cast<double>(n - 1) / 2.0;
    const std::size_t p = 2 + 2 * static_cast<std::size_t>(harmonics);
    std::vector<std::vector<long double>> xtx(p, std::vector<long double>(p, 0.0L));
    std::vector<long double> xty(p, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row = design_row(static_cast<double>(i), harmonics, 52.0);
        row[1] -= t_center;
        for (std::size_t a = 0; a < p; ++a) {
            xty[a] += static_cast<long double>(row[a]) * y[i];
            for (std::size_t b = 0; b < p; ++b)
                xtx[a][b] += static_cast<long double>(row[a]) * row[b];
        }
    }
    std::vector<double> beta = solve_linear(std::move(xtx), std::move(xty));

    ForecastModel m;
    m.intercept = beta[0] - beta[1] * t_center;
    m.slope = beta[1];
    for (std::uint32_t k = 0; k < harmonics; ++k) {
        m.sin_coef.push_back(beta[2 + 2 * k]);
        m.cos_coef.push_back(beta[3 + 2 * k]);
    }
    m.harmonics = harmonics;
    m.train_start_week = start_week;
    m.train_end_week = start_week + static_cast<util::Timestamp>(n - 1) * util::kWeek;
    m.train_length = static_cast<std::uint32_t>(n);

    double ss = 0.0;
    std::size_t zero_weeks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - m.eval(static_cast<double>(i));
        ss += r * r;
        if (y[i] == 0.0) ++zero_weeks;
    }
    m.residual_sigma = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    m.low_confidence = zero_weeks * 5 > n * 3;  // > 60% empty weeks
    return m;
}

ForecastModel fit_model(const WeeklySeries& series, std::uint32_t harmonics) {
    series.validate();
    std::vector<double> y;
    y.reserve(series.points.size());
    for (const WeeklyPoint& p : series.points) y.push_back(static_cast<double>(p.count));
    ForecastModel m = fit_model_values(
        y, harmonics, series.points.empty() ? 0 : series.points.front().week_start);
    m.category = series.category;
    m.block = series.block;
    return m;
}

Forecast predict(const ForecastModel& model, std::uint32_t steps, double z) {
    if (steps < 1) throw StructuralError("forecast horizon must be at least 1 step");
    Forecast f;
    f.low_confidence = model.low_confidence;
    for (std::uint32_t i = 1; i <= steps; ++i) {
        double t = static_cast<double>(model.train_length - 1) + static_cast<double>(i);
        double raw = model.eval(t);
        ForecastPoint pt;
        pt.week_start = model.train_end_week + static_cast<util::Timestamp>(i) * util::kWeek;
        pt.point = std::max(0.0, raw);
        pt.lower = std::max(0.0, raw - z * model.residual_sigma);
        pt.upper = std::max(pt.point, raw + z * model.residual_sigma);
        f.horizon.push_back(pt);
    }
    return f;
}

util::json model_to_json(const ForecastModel& m) {
    return util::json{{"schema_version", 1},
                      {"kind", "forecast_model"},
                      {"category", m.category},
                      {"block", m.block},
                      {"intercept", m.intercept},
                      {"slope", m.slope},
                      {"sin_coef", m.sin_coef},
                      {"cos_coef", m.cos_coef},
                      {"harmonics", m.harmonics},
                      {"period_weeks", m.period_weeks},
                      {"residual_sigma", m.residual_sigma},
                      {"train_start_week", util::format_iso_date(m.train_start_week)},
                      {"train_end_week", util::format_iso_date(m.train_end_week)},
                      {"train_length", m.train_length},
                      {"low_confidence", m.low_confidence}};
}

ForecastModel model_from_json(const util::json& j) {
    if (util::get_or<std::string>(j, "kind", "") != "forecast_model")
        throw StructuralError("not a forecast model document");
    ForecastModel m;
    m.category = util::get_or<std::string>(j, "category", "");
    m.block = util::get_or<std::string>(j, "block", "");
    m.intercept = util::require<double>(j, "intercept");
    m.slope = util::require<double>(j, "slope");
    m.sin_coef = util::require<std::vector<double>>(j, "sin_coef");
    m.cos_coef = util::require<std::vector<double>>(j, "cos_coef");
    m.harmonics = util::require<std::uint32_t>(j, "harmonics");
    m.period_weeks = util::get_or<double>(j, "period_weeks", 52.0);
    m.residual_sigma = util::require<double>(j, "residual_sigma");
    m.train_start_week = util::parse_iso8601(util::require<std::string>(j, "train_start_week"));
    m.train_end_week = util::parse_iso8601(util::require<std::string>(j, "train_end_week"));
    m.train_length = util::require<std::uint32_t>(j, "train_length");
    m.low_confidence = util::get_or<bool>(j, "low_confidence", false);
    if (m.sin_coef.size() != m.harmonics || m.cos_coef.size() != m.harmonics)
        throw StructuralError("harmonic coefficient count mismatch");
    return m;
}

std::string forecast_to_csv(const Forecast& f) {
    std::string out = util::csv_row({"week_start", "point", "lower", "upper"});
    for (const ForecastPoint& p : f.horizon) {
        char point[32], lower[32], upper[32];
        std::snprintf(point, sizeof(point), "%.6f", p.point);
        std::snprintf(lower, sizeof(lower), "%.6f", p.lower);
        std::snprintf(upper, sizeof(upper), "%.6f", p.upper);
        out += util::csv_row({util::format_iso_date(p.week_start), point, lower, upper});
    }
    return out;
}

}  // namespace dhms::forecast

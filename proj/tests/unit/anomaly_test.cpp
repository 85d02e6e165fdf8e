#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/anomaly/features.hpp"
#include "core/anomaly/forest.hpp"
#include "core/anomaly/review.hpp"
#include "core/util/errors.hpp"
#include "core/util/rng.hpp"

using namespace dhms;
using anomaly::FeatureVector;
using anomaly::IsolationForest;

namespace {

FeatureVector point(double a, double b) {
    // two informative dimensions, rest fixed
    return FeatureVector{a, b, 12, 3, 40, 0, 0};
}

std::vector<FeatureVector> gaussian_cluster(std::size_t n, util::Rng& rng, double sigma = 1.0) {
    std::vector<FeatureVector> data;
    data.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        data.push_back(point(rng.normal(0.0, sigma), rng.normal(0.0, sigma)));
    return data;
}

}  // namespace

TEST_CASE("normalization constant c(n) special cases and formula") {
    CHECK(anomaly::c_factor(1) == 0.0);
    CHECK(anomaly::c_factor(2) == 1.0);
    CHECK(anomaly::c_factor(256) == doctest::Approx(10.2448).epsilon(1e-4));
    // generic n against the definition 2H(n-1) - 2(n-1)/n
    double expected = 2.0 * (std::log(9.0) + 0.5772156649) - 2.0 * 9.0 / 10.0;
    CHECK(anomaly::c_factor(10) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("duplicate-only data pins every score at one half") {
    // No separating cut exists, so every tree is a single leaf of size 2 and
    // E[h] = c(2) = c(psi): the score formula fixed point.
    std::vector<FeatureVector> data = {point(1, 1), point(1, 1)};
    IsolationForest::Params params;
    params.subsample = 2;
    params.tree_count = 25;
    params.seed = 7;
    auto forest = IsolationForest::fit(data, params);
    CHECK(forest.score(data[0]) == doctest::Approx(0.5));
    CHECK(forest.score(data[1]) == doctest::Approx(0.5));
    CHECK(forest.mean_path_length(data[0]) == doctest::Approx(anomaly::c_factor(2)));
}

TEST_CASE("score formula endpoints") {
    // s = 2^(-E/c): E = c gives 0.5, E -> 0 gives 1, E -> inf gives 0.
    double c = anomaly::c_factor(256);
    CHECK(std::pow(2.0, -c / c) == doctest::Approx(0.5));
    CHECK(std::pow(2.0, -1e-12 / c) == doctest::Approx(1.0));
    CHECK(std::pow(2.0, -1e6 / c) == doctest::Approx(0.0));
}

TEST_CASE("fit rejects degenerate inputs") {
    std::vector<FeatureVector> one = {point(0, 0)};
    IsolationForest::Params params;
    CHECK_THROWS_AS(IsolationForest::fit(one, params), FitError);
    std::vector<FeatureVector> two = {point(0, 0), point(1, 1)};
    params.subsample = 1;
    CHECK_THROWS_AS(IsolationForest::fit(two, params), FitError);
}

TEST_CASE("far outliers outscore the 95th percentile of inliers") {
    util::Rng rng(1);
    auto data = gaussian_cluster(1000, rng);
    std::vector<std::size_t> outlier_at;
    for (int i = 0; i < 10; ++i) {
        outlier_at.push_back(data.size());
        double angle = rng.uniform(0.0, 2.0 * M_PI);
        data.push_back(point(25.0 * std::cos(angle), 25.0 * std::sin(angle)));
    }
    IsolationForest::Params params;
    params.subsample = 128;
    params.tree_count = 100;
    params.seed = 1;
    auto forest = IsolationForest::fit(data, params);

    std::vector<double> inlier_scores;
    double outlier_mean = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        double s = forest.score(data[i]);
        CHECK(s > 0.0);
        CHECK(s < 1.0);
        if (i < 1000)
            inlier_scores.push_back(s);
        else
            outlier_mean += s / 10.0;
    }
    std::sort(inlier_scores.begin(), inlier_scores.end());
    double p95 = inlier_scores[static_cast<std::size_t>(0.95 * inlier_scores.size())];
    CHECK(outlier_mean > p95);
}

TEST_CASE("fit is deterministic and serialization preserves scores") {
    util::Rng rng(3);
    auto data = gaussian_cluster(300, rng);
    IsolationForest::Params params;
    params.subsample = 64;
    params.tree_count = 40;
    params.seed = 12;
    auto a = IsolationForest::fit(data, params);
    auto b = IsolationForest::fit(data, params);
    auto roundtrip = IsolationForest::from_json(a.to_json());
    CHECK(a.threshold() == b.threshold());
    for (int i = 0; i < 50; ++i) {
        FeatureVector q = point(rng.normal(0, 2), rng.normal(0, 2));
        double sa = a.score(q);
        CHECK(sa == b.score(q));
        CHECK(sa == roundtrip.score(q));
    }
    CHECK(a.to_json() == roundtrip.to_json());
}

TEST_CASE("parallel tree fitting matches single-threaded") {
    util::Rng rng(21);
    auto data = gaussian_cluster(300, rng);
    IsolationForest::Params params;
    params.subsample = 64;
    params.tree_count = 48;
    params.seed = 8;
    auto serial = IsolationForest::fit(data, params, 1);
    auto parallel = IsolationForest::fit(data, params, 4);
    CHECK(serial.to_json() == parallel.to_json());
}

TEST_CASE("duplicates receive identical scores; isolation grows with distance") {
    util::Rng rng(9);
    auto data = gaussian_cluster(400, rng);
    data.push_back(data.front());
    IsolationForest::Params params;
    params.subsample = 128;
    params.tree_count = 60;
    params.seed = 5;
    auto forest = IsolationForest::fit(data, params);
    CHECK(forest.score(data.front()) == forest.score(data.back()));

    // moving a probe further out never lowers its score
    double prev = 0.0;
    for (double offset : {0.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
        double s = forest.score(point(offset, offset));
        if (offset > 0.0) CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("threshold percentile flags roughly the configured tail") {
    util::Rng rng(17);
    auto data = gaussian_cluster(500, rng);
    IsolationForest::Params params;
    params.subsample = 128;
    params.tree_count = 60;
    params.seed = 2;
    params.threshold_percentile = 90.0;
    auto forest = IsolationForest::fit(data, params);
    std::size_t above = 0;
    for (const auto& p : data)
        if (forest.score(p) > forest.threshold()) ++above;
    CHECK(above <= data.size() / 10 + 1);
    CHECK(above >= data.size() / 20);
}

TEST_CASE("featurize extracts calendar, text and recurrence features") {
    sentiment::Lexicon lex({{"broken", -1}}, {});
    // 2024-01-03 is a Wednesday.
    util::Timestamp at = util::parse_iso8601("2024-01-03T14:30:00Z");
    auto c = triage::make_complaint("c1", triage::Category::Water, "tap broken, flood risk",
                                    "S1", "A-101", "A", at);
    auto f = anomaly::featurize(c, lex.score_text(c.description), {}, {"flood", "fire"},
                                7 * util::kDay);
    CHECK(f.hour_of_day == 14);
    CHECK(f.day_of_week == 2);
    CHECK(f.recurrence_count == 0);
    CHECK(f.keyword_hits == 1);
    CHECK(f.text_length == doctest::Approx(c.description.size()));
    CHECK(f.sentiment_score == doctest::Approx(-1.0));
    f.validate();
}

TEST_CASE("recurrence counts same-room same-category priors inside the window") {
    sentiment::Lexicon lex({}, {});
    util::Timestamp base = util::parse_iso8601("2024-03-10T10:00:00Z");
    std::vector<triage::Complaint> history;
    auto make = [&](const std::string& id, triage::Category cat, const std::string& room,
                    util::Timestamp at) {
        return triage::make_complaint(id, cat, "x", "S1", room, "A", at);
    };
    history.push_back(make("h1", triage::Category::Water, "A-101", base - 1 * util::kDay));
    history.push_back(make("h2", triage::Category::Water, "A-101", base - 3 * util::kDay));
    history.push_back(make("h3", triage::Category::Water, "A-101", base - 6 * util::kDay));
    history.push_back(make("h4", triage::Category::Water, "A-101", base - 9 * util::kDay));  // outside
    history.push_back(make("h5", triage::Category::Civil, "A-101", base - 1 * util::kDay));  // other cat
    history.push_back(make("h6", triage::Category::Water, "B-202", base - 1 * util::kDay));  // other room

    auto target = make("c", triage::Category::Water, "A-101", base);
    auto f = anomaly::featurize(target, lex.score_text(""), history, {}, 7 * util::kDay);
    CHECK(f.recurrence_count == 3);
}

TEST_CASE("flag respects thresholds and ordering") {
    util::Rng rng(23);
    auto data = gaussian_cluster(200, rng);
    IsolationForest::Params params;
    params.subsample = 64;
    params.tree_count = 50;
    params.seed = 3;
    auto forest = IsolationForest::fit(data, params);

    std::vector<anomaly::ScoredComplaint> stream;
    for (std::size_t i = 0; i < data.size(); ++i)
        stream.push_back({"c" + std::to_string(i), data[i]});

    CHECK(anomaly::flag(forest, stream, 1.0).empty());
    auto duplicated = stream;
    duplicated.push_back(stream.front());  // repeated id collapses to one case
    auto all = anomaly::flag(forest, duplicated, 0.0);
    CHECK(all.size() == stream.size());
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(all[i - 1].anomaly_score >= all[i].anomaly_score);
    std::set<std::string> ids;
    for (const auto& c : all) ids.insert(c.complaint_id);
    CHECK(ids.size() == all.size());
    for (const auto& c : all) CHECK(c.state == anomaly::ReviewState::Flagged);
}

TEST_CASE("review decisions are single-shot") {
    anomaly::ReviewCase c{"c1", 0.9, anomaly::ReviewState::Flagged, ""};
    auto confirmed = anomaly::review(c, anomaly::ReviewState::Confirmed, "real incident");
    CHECK(confirmed.state == anomaly::ReviewState::Confirmed);
    CHECK(confirmed.reviewer_note == "real incident");
    CHECK_THROWS_AS(anomaly::review(confirmed, anomaly::ReviewState::Dismissed, ""),
                    TransitionError);

    auto dismissed = anomaly::review(c, anomaly::ReviewState::Dismissed, "sensor glitch");
    auto j = anomaly::review_case_to_json(dismissed);
    auto back = anomaly::review_case_from_json(j);
    CHECK(back.state == anomaly::ReviewState::Dismissed);
    CHECK(back.reviewer_note == "sensor glitch");
}

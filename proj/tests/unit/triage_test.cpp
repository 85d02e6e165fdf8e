#include "doctest.h"

#include <filesystem>

#include "core/triage/complaint.hpp"
#include "core/triage/complaint_log.hpp"
#include "core/triage/kpi.hpp"
#include "core/triage/priority.hpp"
#include "core/util/errors.hpp"
#include "core/util/rng.hpp"
#include "support/oracles.hpp"

using namespace dhms;
using triage::Category;
using triage::Complaint;
using triage::Lifecycle;

namespace {

Complaint sample(const std::string& id, Category cat, util::Timestamp created,
                 std::uint32_t affected = 1) {
    return triage::make_complaint(id, cat, "sample text", "S001", "A-101", "A", created, affected);
}

constexpr util::Timestamp kT0 = 1700000000;  // arbitrary fixed instant

}  // namespace

TEST_CASE("priority formula worked examples") {
    auto w = triage::PriorityWeights::defaults();
    w.validate();

    // saturated electrical complaint pins the maximum
    Complaint c1 = sample("c1", Category::Electrical, kT0, w.impact_saturation);
    CHECK(triage::priority_score(c1, w, kT0 + w.age_saturation) == doctest::Approx(1.0));

    // fresh minimal general complaint: 0.4*0.6 + 0.3*(1/50) + 0
    Complaint c2 = sample("c2", Category::General, kT0, 1);
    CHECK(triage::priority_score(c2, w, kT0) == doctest::Approx(0.246));

    // direct substitution: water, half impact, quarter age
    Complaint c3 = sample("c3", Category::Water, kT0, 25);
    CHECK(triage::priority_score(c3, w, kT0 + 18 * util::kHour) == doctest::Approx(0.545));
}

TEST_CASE("priority falls back to the general weight for unlisted categories") {
    triage::PriorityWeights w = triage::PriorityWeights::defaults();
    w.type_weights.erase(Category::Civil);
    Complaint c = sample("c", Category::Civil, kT0, 1);
    double expected = 0.4 * 0.6 + 0.3 * (1.0 / 50.0);
    CHECK(triage::priority_score(c, w, kT0) == doctest::Approx(expected));
}

TEST_CASE("priority rejects clocks that precede creation") {
    auto w = triage::PriorityWeights::defaults();
    Complaint c = sample("c", Category::Water, kT0);
    CHECK_THROWS_AS(triage::priority_score(c, w, kT0 - 1), StructuralError);
}

TEST_CASE("weights validation") {
    auto w = triage::PriorityWeights::defaults();
    w.coefficient_age = 0.5;
    CHECK_THROWS_AS(w.validate(), ValidationError);
    w = triage::PriorityWeights::defaults();
    w.type_weights[Category::Water] = 1.5;
    CHECK_THROWS_AS(w.validate(), ValidationError);
}

TEST_CASE("score is monotone in age and affected count") {
    auto w = triage::PriorityWeights::defaults();
    util::Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Category cat = triage::all_categories()[rng.below(7)];
        std::uint32_t affected = 1 + static_cast<std::uint32_t>(rng.below(80));
        Complaint c = sample("c", cat, kT0, affected);
        util::Timestamp now = kT0 + rng.range(0, 200) * util::kHour;
        double s = triage::priority_score(c, w, now);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(triage::priority_score(c, w, now + util::kHour) >= s);
        Complaint worse = c;
        worse.affected_count += 5;
        CHECK(triage::priority_score(worse, w, now) >= s);
    }
}

TEST_CASE("lifecycle transition table is exactly the four legal moves") {
    const Lifecycle states[] = {Lifecycle::Pending, Lifecycle::InProgress, Lifecycle::Resolved,
                                Lifecycle::Verified};
    int legal = 0, illegal = 0;
    for (Lifecycle from : states) {
        for (Lifecycle to : states) {
            bool expected = (from == Lifecycle::Pending && to == Lifecycle::InProgress) ||
                            (from == Lifecycle::InProgress && to == Lifecycle::Resolved) ||
                            (from == Lifecycle::Resolved && to == Lifecycle::Verified) ||
                            (from == Lifecycle::InProgress && to == Lifecycle::Pending);
            CHECK(triage::transition_allowed(from, to) == expected);
            expected ? ++legal : ++illegal;
        }
    }
    CHECK(legal == 4);
    CHECK(illegal == 12);
}

TEST_CASE("transition appends history and stamps resolved_at") {
    Complaint c = sample("c", Category::Water, kT0);
    CHECK(c.history.size() == 1);

    Complaint moved = triage::transition(c, Lifecycle::InProgress, "assigned", kT0 + 10);
    CHECK(moved.history.size() == 2);
    CHECK(moved.status == Lifecycle::InProgress);
    CHECK_FALSE(moved.resolved_at.has_value());

    Complaint resolved = triage::transition(moved, Lifecycle::Resolved, "done", kT0 + 100);
    CHECK(resolved.resolved_at == std::optional<util::Timestamp>(kT0 + 100));
    resolved.validate();

    SUBCASE("skipping states is rejected") {
        CHECK_THROWS_AS(triage::transition(c, Lifecycle::Verified, "", kT0 + 1), TransitionError);
        CHECK_THROWS_AS(triage::transition(c, Lifecycle::Resolved, "", kT0 + 1), TransitionError);
    }
    SUBCASE("history cannot go backwards") {
        CHECK_THROWS_AS(triage::transition(moved, Lifecycle::Resolved, "", kT0 - 50),
                        StructuralError);
    }
    SUBCASE("reopen clears resolved_at through the legal path") {
        Complaint reopened = triage::transition(moved, Lifecycle::Pending, "reopen", kT0 + 20);
        CHECK(reopened.status == Lifecycle::Pending);
        CHECK_FALSE(reopened.resolved_at.has_value());
        reopened.validate();
    }
}

TEST_CASE("queue ranks a stale electrical issue above a fresh general one") {
    auto w = triage::PriorityWeights::defaults();
    Complaint stale = sample("old-elec", Category::Electrical, kT0);
    Complaint fresh = sample("new-gen", Category::General, kT0 + w.age_saturation);
    auto queue = triage::triage_queue({fresh, stale}, w, kT0 + w.age_saturation);
    REQUIRE(queue.size() == 2);
    CHECK(queue[0].complaint.id == "old-elec");
}

TEST_CASE("queue keeps creation order for equal scores") {
    auto w = triage::PriorityWeights::defaults();
    std::vector<Complaint> cs = {sample("b", Category::Water, kT0 + 50),
                                 sample("a", Category::Water, kT0),
                                 sample("c", Category::Water, kT0 + 50)};
    auto queue = triage::triage_queue(cs, w, kT0 + 100);
    REQUIRE(queue.size() == 3);
    CHECK(queue[0].complaint.id == "a");
    CHECK(queue[1].complaint.id == "b");  // ties at same created_at break by id
    CHECK(queue[2].complaint.id == "c");
}

TEST_CASE("queue matches an independent score-sort and is a permutation") {
    auto w = triage::PriorityWeights::defaults();
    std::map<Category, double> ref_weights;
    for (const auto& [cat, weight] : w.type_weights) ref_weights[cat] = weight;

    util::Rng rng(20);
    std::vector<Complaint> cs;
    for (int i = 0; i < 20; ++i) {
        Complaint c = sample("c" + std::to_string(i), triage::all_categories()[rng.below(7)],
                             kT0 + rng.range(0, 300) * 60, 1 + rng.below(60));
        if (i % 5 == 0) {
            c = triage::transition(c, Lifecycle::InProgress, "", c.created_at + 60);
            c = triage::transition(c, Lifecycle::Resolved, "", c.created_at + 120);
        } else if (i % 4 == 0) {
            c = triage::transition(c, Lifecycle::InProgress, "", c.created_at + 60);
        }
        cs.push_back(std::move(c));
    }
    util::Timestamp now = kT0 + 400 * 60;
    auto queue = triage::triage_queue(cs, w, now);

    std::vector<std::pair<double, std::string>> reference;
    std::size_t open_count = 0;
    for (const auto& c : cs) {
        if (c.status != Lifecycle::Pending && c.status != Lifecycle::InProgress) continue;
        ++open_count;
        reference.push_back({oracles::priority_reference(c, ref_weights, 72.0, 50.0, now), c.id});
    }
    REQUIRE(queue.size() == open_count);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        // same scores to near machine precision, same descending order
        CHECK(queue[i].score ==
              doctest::Approx(oracles::priority_reference(queue[i].complaint, ref_weights, 72.0,
                                                          50.0, now))
                  .epsilon(1e-12));
        if (i) CHECK(queue[i - 1].score >= queue[i].score);
    }
}

TEST_CASE("kpi report on an 18-hour fixture") {
    Complaint c = sample("c", Category::Water, kT0);
    c = triage::transition(c, Lifecycle::InProgress, "", kT0 + util::kHour);
    c = triage::transition(c, Lifecycle::Resolved, "", kT0 + 18 * util::kHour);
    auto report = triage::kpi_report({c}, kT0 - util::kDay, kT0 + util::kDay);
    CHECK_FALSE(report.empty);
    CHECK(report.mean_resolution_hours == doctest::Approx(18.0));
}

TEST_CASE("kpi report flags an empty window") {
    auto report = triage::kpi_report({}, kT0, kT0 + util::kDay);
    CHECK(report.empty);
    CHECK(report.total == 0);
    CHECK(report.mean_resolution_hours == 0.0);
}

TEST_CASE("kpi hand-computed fixture of ten complaints") {
    std::vector<Complaint> cs;
    // five resolved at 6h, 12h, 18h, 24h, 30h -> mean 18h
    for (int i = 0; i < 5; ++i) {
        Complaint c = sample("r" + std::to_string(i), Category::Water, kT0 + i * util::kHour);
        c = triage::transition(c, Lifecycle::InProgress, "", c.created_at + 1);
        c = triage::transition(c, Lifecycle::Resolved, "", c.created_at + (6 + 6 * i) * util::kHour);
        cs.push_back(std::move(c));
    }
    // three old open complaints (older than 24h at window end)
    for (int i = 0; i < 3; ++i)
        cs.push_back(sample("o" + std::to_string(i), Category::Civil, kT0));
    // two fresh open complaints
    util::Timestamp window_end = kT0 + 36 * util::kHour;
    for (int i = 0; i < 2; ++i)
        cs.push_back(sample("f" + std::to_string(i), Category::General, window_end - util::kHour));

    auto report = triage::kpi_report(cs, kT0 - 1, window_end);
    CHECK(report.total == 10);
    CHECK(report.resolved == 5);
    CHECK(report.mean_resolution_hours == doctest::Approx(18.0));
    CHECK(report.open_over_24h_fraction == doctest::Approx(0.3));
    CHECK(report.by_category.at("water") == 5);
    CHECK(report.by_category.at("civil") == 3);
    CHECK(report.by_category.at("general") == 2);
}

TEST_CASE("complaint JSON round trip") {
    Complaint c = sample("c9", Category::Plumbing, kT0, 4);
    c = triage::transition(c, Lifecycle::InProgress, "plumber assigned", kT0 + 60);
    auto j = triage::complaint_to_json(c);
    Complaint back = triage::complaint_from_json(j);
    CHECK(back.id == c.id);
    CHECK(back.category == c.category);
    CHECK(back.history.size() == c.history.size());
    CHECK(triage::complaint_to_json(back) == j);

    SUBCASE("unknown category is a structural error") {
        j["category"] = "quantum";
        CHECK_THROWS_AS(triage::complaint_from_json(j), StructuralError);
    }
}

TEST_CASE("complaint event log replays to the same states") {
    std::string path =
        (std::filesystem::temp_directory_path() / "dhms_triage_log_test.jsonl").string();
    std::remove(path.c_str());

    Complaint a = sample("a", Category::Water, kT0);
    Complaint b = sample("b", Category::Civil, kT0 + 60);
    triage::append_event(path, triage::created_event(a));
    triage::append_event(path, triage::created_event(b));
    triage::append_event(path,
                         triage::transition_event("a", Lifecycle::InProgress, "picked up", kT0 + 120));
    triage::append_event(path,
                         triage::transition_event("a", Lifecycle::Resolved, "fixed", kT0 + 7200));

    auto replayed = triage::replay_log(path);
    REQUIRE(replayed.size() == 2);
    CHECK(replayed[0].id == "a");
    CHECK(replayed[0].status == Lifecycle::Resolved);
    CHECK(replayed[0].resolved_at == std::optional<util::Timestamp>(kT0 + 7200));
    CHECK(replayed[0].history.size() == 3);
    CHECK(replayed[1].status == Lifecycle::Pending);

    SUBCASE("illegal transitions poison the replay") {
        triage::append_event(path, triage::transition_event("b", Lifecycle::Verified, "", kT0 + 200));
        CHECK_THROWS_AS(triage::replay_log(path), TransitionError);
    }
    SUBCASE("unknown ids are structural errors") {
        triage::append_event(path, triage::transition_event("zz", Lifecycle::InProgress, "", kT0));
        CHECK_THROWS_AS(triage::replay_log(path), StructuralError);
    }
    std::remove(path.c_str());
}

#include "doctest.h"

#include <cmath>

#include "core/alloc/alloc_io.hpp"
#include "core/util/errors.hpp"
#include "core/workload/generate.hpp"
#include "core/workload/spec.hpp"

using namespace dhms;
using workload::WorkloadSpec;

TEST_CASE("minimal allocation spec yields a minimal instance") {
    WorkloadSpec spec;
    spec.seed = 1;
    spec.allocation.student_count = 1;
    spec.allocation.room_count = 1;
    spec.allocation.preference_length = 1;
    spec.allocation.group_fraction = 0.0;
    auto inst = workload::gen_allocation(spec);
    CHECK(inst.students.size() == 1);
    CHECK(inst.rooms.size() == 1);
    CHECK(inst.students[0].preferences.size() == 1);
}

TEST_CASE("generation is deterministic per seed") {
    WorkloadSpec spec;
    spec.seed = 42;
    spec.allocation.student_count = 50;
    spec.allocation.room_count = 30;
    spec.allocation.group_fraction = 0.3;
    auto a = workload::gen_allocation(spec);
    auto b = workload::gen_allocation(spec);
    CHECK(alloc::instance_to_json(a) == alloc::instance_to_json(b));

    spec.seed = 43;
    auto c = workload::gen_allocation(spec);
    CHECK(alloc::instance_to_json(a) != alloc::instance_to_json(c));
}

TEST_CASE("generated instances satisfy the allocation invariants") {
    for (std::uint64_t seed : {1, 5, 9}) {
        WorkloadSpec spec;
        spec.seed = seed;
        spec.allocation.student_count = 120;
        spec.allocation.room_count = 70;
        spec.allocation.group_fraction = 0.4;
        spec.allocation.preference_model = workload::PreferenceModel::PopularitySkewed;
        auto inst = workload::gen_allocation(spec);
        inst.validate();  // throws on any violation
        // grouped students draw same-block preferences
        std::map<std::string, std::string> group_block;
        std::map<std::string, std::string> room_block;
        for (const auto& r : inst.rooms) room_block[r.id] = r.block;
        for (const auto& s : inst.students) {
            if (!s.group_id) continue;
            for (const auto& p : s.preferences) {
                auto [it, fresh] = group_block.emplace(*s.group_id, room_block[p]);
                CHECK(it->second == room_block[p]);
            }
        }
    }
}

TEST_CASE("spec validation rejects broken specs") {
    WorkloadSpec spec;
    spec.allocation.room_capacity = 0;
    CHECK_THROWS_AS(spec.validate(), SpecError);
    spec = WorkloadSpec{};
    spec.complaints.anomaly_contamination = 0.5;
    CHECK_THROWS_AS(spec.validate(), SpecError);
    spec = WorkloadSpec{};
    spec.complaints.weekly_rates["water"] = -1.0;
    CHECK_THROWS_AS(spec.validate(), SpecError);
    spec = WorkloadSpec{};
    spec.complaints.weekly_rates["starship"] = 1.0;
    CHECK_THROWS_AS(spec.validate(), SpecError);
}

TEST_CASE("zero rates produce an empty stream; zero contamination all-normal labels") {
    WorkloadSpec spec;
    spec.seed = 2;
    spec.complaints.duration_weeks = 10;
    spec.complaints.weekly_rates.clear();
    CHECK(workload::gen_complaints(spec).complaints.empty());

    spec.complaints.weekly_rates = {{"water", 3.0}, {"electrical", 2.0}};
    spec.complaints.anomaly_contamination = 0.0;
    auto stream = workload::gen_complaints(spec);
    CHECK(stream.complaints.size() > 0);
    for (const auto& [id, label] : stream.labels) CHECK_FALSE(label);
}

TEST_CASE("complaint stream is ordered, valid, and matches its labels") {
    WorkloadSpec spec;
    spec.seed = 3;
    spec.complaints.duration_weeks = 26;
    spec.complaints.weekly_rates = {{"water", 4.0}, {"electrical", 3.0}, {"general", 2.0}};
    spec.complaints.anomaly_contamination = 0.05;
    auto stream = workload::gen_complaints(spec);
    REQUIRE(stream.complaints.size() > 100);

    std::size_t planted = 0;
    for (std::size_t i = 0; i < stream.complaints.size(); ++i) {
        const auto& c = stream.complaints[i];
        c.validate();
        REQUIRE(stream.labels.count(c.id) == 1);
        if (stream.labels.at(c.id)) ++planted;
        if (i) CHECK(stream.complaints[i - 1].created_at <= c.created_at);
    }
    double fraction = static_cast<double>(planted) / stream.complaints.size();
    CHECK(fraction == doctest::Approx(0.05).epsilon(0.35));

    // ground truth rides in a separate document, complaints carry no labels
    auto labels_doc = workload::labels_to_json(stream);
    CHECK(labels_doc.at("labels").size() == stream.complaints.size());
    auto complaints_doc = triage::complaints_to_json(stream.complaints);
    CHECK(complaints_doc.dump().find("anomalous") == std::string::npos);
}

TEST_CASE("weekly mean of generated counts tracks the spec rate") {
    WorkloadSpec spec;
    spec.seed = 8;
    spec.complaints.duration_weeks = 52;
    spec.complaints.weekly_rates = {{"water", 6.0}};
    spec.complaints.seasonal_amplitudes = {{"water", 0.0}};  // flat for an exact mean
    spec.complaints.anomaly_contamination = 0.0;
    auto stream = workload::gen_complaints(spec);
    double mean = static_cast<double>(stream.complaints.size()) / 52.0;
    double stderr_mean = std::sqrt(6.0 / 52.0);  // Poisson variance == rate
    CHECK(std::abs(mean - 6.0) <= 3.0 * stderr_mean);
}

TEST_CASE("workload spec JSON round trip") {
    WorkloadSpec spec;
    spec.seed = 11;
    spec.allocation.preference_model = workload::PreferenceModel::PopularitySkewed;
    spec.complaints.weekly_rates = {{"water", 2.5}};
    auto j = workload::spec_to_json(spec);
    auto back = workload::spec_from_json(j);
    CHECK(workload::spec_to_json(back) == j);
    CHECK(back.allocation.preference_model == workload::PreferenceModel::PopularitySkewed);
    CHECK(back.complaints.weekly_rates.at("water") == 2.5);
}

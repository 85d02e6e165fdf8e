#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/util/jsonu.hpp"
#include "core/util/timeu.hpp"

namespace dhms::workload {

enum class PreferenceModel { Uniform, PopularitySkewed };

struct AllocationSpec {
    std::uint32_t student_count = 100;
    std::uint32_t room_count = 60;
    std::uint32_t room_capacity = 2;
    std::vector<std::string> blocks = {"A", "B", "C"};
    std::uint32_t preference_length = 5;
    PreferenceModel preference_model = PreferenceModel::Uniform;
    double zipf_exponent = 1.1;        // popularity skew when model is zipf
    double group_fraction = 0.2;       // fraction of students placed in groups
    std::uint32_t group_size_min = 2;
    std::uint32_t group_size_max = 3;
};

struct ComplaintSpec {
    std::uint32_t duration_weeks = 52;
    util::Timestamp start = 1704067200;  // 2024-01-01, aligned to a Monday during generation
    std::vector<std::string> blocks = {"A", "B", "C"};
    std::uint32_t rooms_per_block = 40;
    std::uint32_t student_count = 300;
    std::map<std::string, double> weekly_rates;         // category -> Poisson mean
    std::map<std::string, double> seasonal_amplitudes;  // category -> relative amplitude
    double anomaly_contamination = 0.0;                 // fraction of the stream, <= 0.2
    double resolve_fraction = 0.8;
    double mean_resolution_hours = 18.0;
};

struct WorkloadSpec {
    std::uint64_t seed = 0;
    AllocationSpec allocation;
    ComplaintSpec complaints;

    void validate() const;  // throws SpecError
};

WorkloadSpec spec_from_json(const util::json& j);
util::json spec_to_json(const WorkloadSpec& s);

}  // namespace dhms::workload

#include "core/workload/spec.hpp"

#include "core/triage/complaint.hpp"
#include "core/util/errors.hpp"

namespace dhms::workload {

void WorkloadSpec::validate() const {
    const AllocationSpec& a = allocation;
    if (a.student_count > 0) {
        if (a.room_count == 0 || a.room_capacity == 0)
            throw SpecError("allocation spec has zero total room capacity");
        if (a.blocks.empty()) throw SpecError("allocation spec needs at least one block");
        if (a.preference_length == 0) throw SpecError("preference_length must be >= 1");
        if (a.preference_length > a.room_count)
            throw SpecError("preference_length exceeds room count");
        if (a.group_fraction < 0.0 || a.group_fraction > 1.0)
            throw SpecError("group_fraction outside [0,1]");
        if (a.group_size_min < 2 || a.group_size_max < a.group_size_min)
            throw SpecError("group sizes must satisfy 2 <= min <= max");
        if (a.zipf_exponent <= 0.0) throw SpecError("zipf_exponent must be positive");
    }
    const ComplaintSpec& c = complaints;
    if (c.anomaly_contamination < 0.0 || c.anomaly_contamination > 0.2)
        throw SpecError("anomaly_contamination outside [0, 0.2]");
    for (const auto& [cat, rate] : c.weekly_rates) {
        if (rate < 0.0) throw SpecError("weekly rate for " + cat + " is negative");
        if (!triage::category_from_string(cat))
            throw SpecError("unknown complaint category in spec: " + cat);
    }
    for (const auto& [cat, amp] : c.seasonal_amplitudes)
        if (amp < 0.0 || amp > 1.0)
            throw SpecError("seasonal amplitude for " + cat + " outside [0,1]");
    if (c.resolve_fraction < 0.0 || c.resolve_fraction > 1.0)
        throw SpecError("resolve_fraction outside [0,1]");
    if (c.mean_resolution_hours < 0.0) throw SpecError("mean_resolution_hours is negative");
    if (c.duration_weeks > 0 && (c.blocks.empty() || c.rooms_per_block == 0))
        throw SpecError("complaint spec needs blocks and rooms_per_block");
}

WorkloadSpec spec_from_json(const util::json& j) {
    WorkloadSpec s;
    s.seed = util::get_or<std::uint64_t>(j, "seed", 0);
    if (j.contains("allocation")) {
        const util::json& ja = j.at("allocation");
        AllocationSpec& a = s.allocation;
        a.student_count = util::get_or<std::uint32_t>(ja, "student_count", a.student_count);
        a.room_count = util::get_or<std::uint32_t>(ja, "room_count", a.room_count);
        a.room_capacity = util::get_or<std::uint32_t>(ja, "room_capacity", a.room_capacity);
        a.blocks = util::get_or<std::vector<std::string>>(ja, "blocks", a.blocks);
        a.preference_length =
            util::get_or<std::uint32_t>(ja, "preference_length", a.preference_length);
        std::string model = util::get_or<std::string>(ja, "preference_model", "uniform");
        if (model == "uniform")
            a.preference_model = PreferenceModel::Uniform;
        else if (model == "zipf")
            a.preference_model = PreferenceModel::PopularitySkewed;
        else
            throw SpecError("unknown preference_model: " + model);
        a.zipf_exponent = util::get_or<double>(ja, "zipf_exponent", a.zipf_exponent);
        a.group_fraction = util::get_or<double>(ja, "group_fraction", a.group_fraction);
        a.group_size_min = util::get_or<std::uint32_t>(ja, "group_size_min", a.group_size_min);
        a.group_size_max = util::get_or<std::uint32_t>(ja, "group_size_max", a.group_size_max);
    }
    if (j.contains("complaints")) {
        const util::json& jc = j.at("complaints");
        ComplaintSpec& c = s.complaints;
        c.duration_weeks = util::get_or<std::uint32_t>(jc, "duration_weeks", c.duration_weeks);
        if (jc.contains("start"))
            c.start = util::parse_iso8601(jc.at("start").get<std::string>());
        c.blocks = util::get_or<std::vector<std::string>>(jc, "blocks", c.blocks);
        c.rooms_per_block = util::get_or<std::uint32_t>(jc, "rooms_per_block", c.rooms_per_block);
        c.student_count = util::get_or<std::uint32_t>(jc, "student_count", c.student_count);
        c.weekly_rates =
            util::get_or<std::map<std::string, double>>(jc, "weekly_rates", c.weekly_rates);
        c.seasonal_amplitudes = util::get_or<std::map<std::string, double>>(
            jc, "seasonal_amplitudes", c.seasonal_amplitudes);
        c.anomaly_contamination =
            util::get_or<double>(jc, "anomaly_contamination", c.anomaly_contamination);
        c.resolve_fraction = util::get_or<double>(jc, "resolve_fraction", c.resolve_fraction);
        c.mean_resolution_hours =
            util::get_or<double>(jc, "mean_resolution_hours", c.mean_resolution_hours);
    }
    s.validate();
    return s;
}

util::json spec_to_json(const WorkloadSpec& s) {
    util::json ja{{"student_count", s.allocation.student_count},
                  {"room_count", s.allocation.room_count},
                  {"room_capacity", s.allocation.room_capacity},
                  {"blocks", s.allocation.blocks},
                  {"preference_length", s.allocation.preference_length},
                  {"preference_model",
                   s.allocation.preference_model == PreferenceModel::Uniform ? "uniform" : "zipf"},
                  {"zipf_exponent", s.allocation.zipf_exponent},
                  {"group_fraction", s.allocation.group_fraction},
                  {"group_size_min", s.allocation.group_size_min},
                  {"group_size_max", s.allocation.group_size_max}};
    util::json jc{{"duration_weeks", s.complaints.duration_weeks},
                  {"start", util::format_iso8601(s.complaints.start)},
                  {"blocks", s.complaints.blocks},
                  {"rooms_per_block", s.complaints.rooms_per_block},
                  {"student_count", s.complaints.student_count},
                  {"weekly_rates", s.complaints.weekly_rates},
                  {"seasonal_amplitudes", s.complaints.seasonal_amplitudes},
                  {"anomaly_contamination", s.complaints.anomaly_contamination},
                  {"resolve_fraction", s.complaints.resolve_fraction},
                  {"mean_resolution_hours", s.complaints.mean_resolution_hours}};
    return util::json{
        {"schema_version", 1}, {"seed", s.seed}, {"allocation", ja}, {"complaints", jc}};
}

}  // namespace dhms::workload

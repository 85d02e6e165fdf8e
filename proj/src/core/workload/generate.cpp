#include "core/workload/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/util/errors.hpp"
#include "core/util/rng.hpp"

namespace dhms::workload {

using util::Rng;

namespace {

std::string padded_id(const char* prefix, std::size_t index, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, index);
    return buf;
}

const std::vector<std::string>& departments() {
    static const std::vector<std::string> d = {"cse", "ece", "mech", "civil", "chem", "arch"};
    return d;
}

// Phrase pools for synthetic complaint text. Normal descriptions stay clear
// of the anomaly alert keywords so planted events remain the ground truth.
const std::vector<std::string>& normal_phrases(triage::Category cat) {
    using C = triage::Category;
    static const std::unordered_map<int, std::vector<std::string>> pool = {
        {static_cast<int>(C::Electrical),
         {"ceiling fan running slow in the room",
          "tube light flickering near the study table",
          "power socket loose and needs checking",
          "light switch stuck and hard to press",
          "fan regulator knob broken off"}},
        {static_cast<int>(C::Water),
         {"low water pressure in the washroom tap",
          "water cooler on the floor not chilled",
          "geyser taking long to heat water",
          "drinking water dispenser dripping slowly",
          "shower head spraying unevenly"}},
        {static_cast<int>(C::Plumbing),
         {"washbasin draining slowly in the corridor",
          "toilet flush handle loose",
          "tap washer worn out and dripping",
          "pipe joint under the sink sweating",
          "drain cover rattling in the bathroom"}},
        {static_cast<int>(C::Sanitation),
         {"dustbin on the floor not cleared today",
          "corridor needs mopping after rain",
          "washroom needs deep cleaning",
          "cobwebs near the stairwell ceiling",
          "garbage pickup missed this morning"}},
        {static_cast<int>(C::Civil),
         {"paint peeling near the window frame",
          "door hinge creaking loudly",
          "window latch not closing properly",
          "crack in plaster near the balcony",
          "cupboard shelf tilted and loose"}},
        {static_cast<int>(C::General),
         {"wifi signal weak at the end of the corridor",
          "notice board glass pane loose",
          "common room chairs need repair",
          "mess timing clock stopped",
          "laundry machine token slot jammed"}},
        {static_cast<int>(C::Other),
         {"request for an extra study lamp",
          "mosquito net frame bent",
          "room nameplate missing",
          "corridor bulb a little dim",
          "shoe rack shelf loose"}}};
    return pool.at(static_cast<int>(cat));
}

const std::vector<std::string>& anomaly_phrases() {
    static const std::vector<std::string> pool = {
        "urgent fire smell and smoke coming from the switchboard, sparking badly and spreading, "
        "everyone on the floor is scared, this is dangerous and terrible, please send help "
        "immediately before it gets worse",
        "emergency flood in the corridor, water burst from the main pipe and is overflowing "
        "into rooms, books and beds soaked, situation is awful and unbearable, urgent action "
        "needed right now",
        "urgent gas smell near the pantry, smoke and a burnt odour, people feel dizzy, this is "
        "hazardous and frightening, need emergency response immediately, the whole wing smells "
        "foul and dangerous",
        "theft reported, cupboard lock broken and laptop missing, this is the worst security "
        "failure, urgent emergency, students are angry and scared, nothing feels safe anymore "
        "in this block",
        "electric shock from the water cooler tap, sparking and smoke from the wiring, urgent "
        "and dangerous, someone could get badly hurt, terrible negligence, emergency repair "
        "needed immediately"};
    return pool;
}

std::vector<std::string> block_room_ids(const std::string& block, std::uint32_t rooms_per_block) {
    std::vector<std::string> ids;
    ids.reserve(rooms_per_block);
    for (std::uint32_t i = 1; i <= rooms_per_block; ++i)
        ids.push_back(block + "-" + std::to_string(100 + i));
    return ids;
}

}  // namespace

alloc::AllocationInstance gen_allocation(const WorkloadSpec& spec) {
    spec.validate();
    const AllocationSpec& a = spec.allocation;
    if (a.student_count == 0) throw SpecError("allocation spec has zero students");

    alloc::AllocationInstance inst;
    const int room_width = a.room_count >= 1000 ? 4 : 3;
    const int student_width = a.student_count >= 1000 ? 4 : 3;

    for (std::size_t i = 0; i < a.room_count; ++i) {
        alloc::Room room;
        room.id = padded_id("R", i + 1, room_width);
        room.block = a.blocks[i % a.blocks.size()];
        room.capacity = a.room_capacity;
        inst.rooms.push_back(std::move(room));
    }
    std::unordered_map<std::string, std::vector<std::size_t>> rooms_by_block;
    for (std::size_t i = 0; i < inst.rooms.size(); ++i)
        rooms_by_block[inst.rooms[i].block].push_back(i);

    Rng rng_rank = Rng::derive(spec.seed, 1);
    Rng rng_attr = Rng::derive(spec.seed, 2);
    Rng rng_group = Rng::derive(spec.seed, 3);
    Rng rng_pref = Rng::derive(spec.seed, 4);

    std::vector<std::uint32_t> ranks(a.student_count);
    for (std::uint32_t i = 0; i < a.student_count; ++i) ranks[i] = i + 1;
    rng_rank.shuffle(ranks);

    // Popularity permutation for the skewed model: zipf rank k maps to one
    // concrete room, identical for all students, which is what creates
    // contention.
    std::vector<std::size_t> popularity(a.room_count);
    for (std::size_t i = 0; i < a.room_count; ++i) popularity[i] = i;
    rng_pref.shuffle(popularity);
    util::ZipfSampler zipf(a.room_count, a.zipf_exponent);

    auto draw_preferences = [&](const std::vector<std::size_t>& pool,
                                std::uint32_t count) -> std::vector<std::string> {
        std::vector<std::string> prefs;
        std::vector<char> taken(inst.rooms.size(), 0);
        std::uint32_t want = std::min<std::uint32_t>(count, static_cast<std::uint32_t>(pool.size()));
        while (prefs.size() < want) {
            std::size_t room_idx;
            if (a.preference_model == PreferenceModel::Uniform || !pool.empty()) {
                if (a.preference_model == PreferenceModel::Uniform) {
                    room_idx = pool[static_cast<std::size_t>(rng_pref.below(pool.size()))];
                } else {
                    // Zipf over the popularity order, restricted to the pool by
                    // rejection.
                    room_idx = popularity[zipf.draw(rng_pref)];
                    if (std::find(pool.begin(), pool.end(), room_idx) == pool.end()) continue;
                }
            } else {
                break;
            }
            if (taken[room_idx]) continue;
            taken[room_idx] = 1;
            prefs.push_back(inst.rooms[room_idx].id);
        }
        return prefs;
    };

    std::vector<std::size_t> all_rooms(a.room_count);
    for (std::size_t i = 0; i < a.room_count; ++i) all_rooms[i] = i;

    // Group assignment: grab students from the front in chunks; the rest stay
    // ungrouped. Student order is randomized by the seniority shuffle anyway.
    std::uint32_t grouped_target =
        static_cast<std::uint32_t>(std::llround(a.group_fraction * a.student_count));
    std::vector<std::optional<std::string>> group_of(a.student_count);
    std::vector<std::string> group_block(a.student_count);
    std::uint32_t next_student = 0, group_no = 0;
    while (next_student + a.group_size_min <= grouped_target) {
        std::uint32_t size = static_cast<std::uint32_t>(
            rng_group.range(a.group_size_min, a.group_size_max));
        size = std::min(size, grouped_target - next_student);
        if (size < a.group_size_min) break;
        std::string gid = padded_id("G", ++group_no, 2);
        const std::string& block =
            a.blocks[static_cast<std::size_t>(rng_group.below(a.blocks.size()))];
        for (std::uint32_t k = 0; k < size; ++k) {
            group_of[next_student] = gid;
            group_block[next_student] = block;
            ++next_student;
        }
    }

    for (std::uint32_t i = 0; i < a.student_count; ++i) {
        alloc::Student s;
        s.id = padded_id("S", i + 1, student_width);
        s.seniority_rank = ranks[i];
        s.block = a.blocks[static_cast<std::size_t>(rng_attr.below(a.blocks.size()))];
        s.department =
            departments()[static_cast<std::size_t>(rng_attr.below(departments().size()))];
        if (group_of[i]) {
            s.group_id = group_of[i];
            s.preferences = draw_preferences(rooms_by_block[group_block[i]], a.preference_length);
        } else {
            s.preferences = draw_preferences(all_rooms, a.preference_length);
        }
        inst.students.push_back(std::move(s));
    }
    inst.validate();
    return inst;
}

LabeledComplaints gen_complaints(const WorkloadSpec& spec) {
    spec.validate();
    const ComplaintSpec& c = spec.complaints;

    LabeledComplaints out;
    if (c.duration_weeks == 0 || c.weekly_rates.empty()) return out;

    util::Timestamp start = util::week_start(c.start);
    Rng rng_count = Rng::derive(spec.seed, 10);
    Rng rng_meta = Rng::derive(spec.seed, 11);
    Rng rng_time = Rng::derive(spec.seed, 12);
    Rng rng_anom = Rng::derive(spec.seed, 13);
    Rng rng_life = Rng::derive(spec.seed, 14);

    std::vector<std::vector<std::string>> rooms;
    for (const std::string& b : c.blocks) rooms.push_back(block_room_ids(b, c.rooms_per_block));

    struct Draft {
        triage::Complaint complaint;
        bool anomalous = false;
    };
    std::vector<Draft> drafts;
    std::size_t serial = 0;

    auto pick_room = [&](Rng& rng, std::size_t& block_idx) {
        block_idx = static_cast<std::size_t>(rng.below(c.blocks.size()));
        const auto& pool = rooms[block_idx];
        return pool[static_cast<std::size_t>(rng.below(pool.size()))];
    };
    auto pick_student = [&](Rng& rng) {
        return padded_id("S", 1 + static_cast<std::size_t>(rng.below(c.student_count)), 4);
    };

    // Normal traffic: weekly Poisson per category, sinusoidal seasonality,
    // submissions during waking hours.
    std::size_t cat_index = 0;
    for (const auto& [cat_name, rate] : c.weekly_rates) {
        triage::Category cat = *triage::category_from_string(cat_name);
        double amplitude = 0.0;
        if (auto it = c.seasonal_amplitudes.find(cat_name); it != c.seasonal_amplitudes.end())
            amplitude = it->second;
        double phase = 2.0 * M_PI * static_cast<double>(cat_index) / 7.0;
        for (std::uint32_t w = 0; w < c.duration_weeks; ++w) {
            double lambda = rate * (1.0 + amplitude *
                                              std::sin(2.0 * M_PI * static_cast<double>(w) / 52.0 +
                                                       phase));
            std::uint32_t n = rng_count.poisson(std::max(0.0, lambda));
            for (std::uint32_t k = 0; k < n; ++k) {
                std::size_t block_idx;
                std::string room = pick_room(rng_meta, block_idx);
                util::Timestamp at = start + static_cast<util::Timestamp>(w) * util::kWeek +
                                     rng_time.range(0, 6) * util::kDay +
                                     rng_time.range(7, 22) * util::kHour +
                                     rng_time.range(0, 59) * 60;
                const auto& pool = normal_phrases(cat);
                std::string text = pool[static_cast<std::size_t>(rng_meta.below(pool.size()))];
                Draft d;
                d.complaint = triage::make_complaint(
                    padded_id("C", ++serial, 5), cat, text, pick_student(rng_meta), room,
                    c.blocks[block_idx], at,
                    1 + static_cast<std::uint32_t>(rng_meta.below(4)));
                drafts.push_back(std::move(d));
            }
        }
        ++cat_index;
    }

    // Planted anomalies on top of the clean stream: contamination is the
    // anomalous fraction of the final stream. Singletons carry alarm text at
    // small hours; bursts read like ordinary complaints but hammer the same
    // room in quick small-hour succession, so only timing and recurrence
    // give them away.
    std::size_t normal_count = drafts.size();
    std::size_t anomaly_target = static_cast<std::size_t>(
        std::llround(c.anomaly_contamination * static_cast<double>(normal_count) /
                     (1.0 - c.anomaly_contamination)));
    std::size_t planted = 0;
    while (planted < anomaly_target) {
        bool burst = anomaly_target - planted >= 4 && rng_anom.uniform() < 0.4;
        std::size_t copies = burst
                                 ? std::min<std::size_t>(
                                       static_cast<std::size_t>(rng_anom.range(5, 8)),
                                       anomaly_target - planted)
                                 : 1;
        std::size_t block_idx;
        std::string room = pick_room(rng_anom, block_idx);
        std::string student = pick_student(rng_anom);
        triage::Category cat =
            triage::all_categories()[static_cast<std::size_t>(
                rng_anom.below(triage::all_categories().size()))];
        util::Timestamp base = start +
                               rng_anom.range(0, static_cast<std::int64_t>(c.duration_weeks) - 1) *
                                   util::kWeek +
                               rng_anom.range(0, 6) * util::kDay +
                               rng_anom.range(0, 4) * util::kHour + rng_anom.range(0, 59) * 60;
        for (std::size_t k = 0; k < copies; ++k) {
            std::string text;
            if (burst) {
                const auto& pool = normal_phrases(cat);
                text = pool[static_cast<std::size_t>(rng_anom.below(pool.size()))];
                // repeated incident reports start flagging urgency
                if (rng_anom.uniform() < 0.5) text += ", urgent, happening again";
            } else {
                const auto& pool = anomaly_phrases();
                text = pool[static_cast<std::size_t>(rng_anom.below(pool.size()))];
            }
            Draft d;
            d.anomalous = true;
            d.complaint = triage::make_complaint(
                padded_id("C", ++serial, 5), cat, std::move(text), student, room,
                c.blocks[block_idx],
                base + static_cast<util::Timestamp>(k) * (20 * 60 + rng_anom.range(0, 20) * 60),
                burst ? 1 + static_cast<std::uint32_t>(rng_anom.below(4))
                      : 5 + static_cast<std::uint32_t>(rng_anom.below(20)));
            drafts.push_back(std::move(d));
            ++planted;
        }
    }

    // Lifecycle progression for a slice of the stream.
    for (Draft& d : drafts) {
        if (rng_life.uniform() >= c.resolve_fraction) {
            if (rng_life.uniform() < 0.5)
                d.complaint = triage::transition(d.complaint, triage::Lifecycle::InProgress,
                                                 "assigned", d.complaint.created_at +
                                                                 rng_life.range(1, 12) * util::kHour);
            continue;
        }
        double total_hours = -c.mean_resolution_hours * std::log(std::max(1e-12, rng_life.uniform()));
        total_hours = std::max(0.5, total_hours);
        util::Timestamp started =
            d.complaint.created_at + static_cast<util::Timestamp>(total_hours * 3600.0 * 0.3);
        util::Timestamp resolved =
            d.complaint.created_at + static_cast<util::Timestamp>(total_hours * 3600.0);
        d.complaint =
            triage::transition(d.complaint, triage::Lifecycle::InProgress, "assigned", started);
        d.complaint = triage::transition(d.complaint, triage::Lifecycle::Resolved, "fixed", resolved);
        if (rng_life.uniform() < 0.2)
            d.complaint = triage::transition(d.complaint, triage::Lifecycle::Verified, "checked",
                                             resolved + rng_life.range(1, 24) * util::kHour);
    }

    std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        if (a.complaint.created_at != b.complaint.created_at)
            return a.complaint.created_at < b.complaint.created_at;
        return a.complaint.id < b.complaint.id;
    });
    for (Draft& d : drafts) {
        out.labels[d.complaint.id] = d.anomalous;
        out.complaints.push_back(std::move(d.complaint));
    }
    return out;
}

util::json labels_to_json(const LabeledComplaints& lc) {
    util::json arr = util::json::array();
    for (const triage::Complaint& c : lc.complaints)
        arr.push_back({{"id", c.id}, {"anomalous", lc.labels.at(c.id)}});
    return util::json{{"schema_version", 1}, {"labels", arr}};
}

}  // namespace dhms::workload

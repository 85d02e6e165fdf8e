#include "core/anomaly/review.hpp"

#include <algorithm>
#include <set>

#include "core/util/errors.hpp"

namespace dhms::anomaly {

std::string to_string(ReviewState s) {
    switch (s) {
        case ReviewState::Flagged: return "Flagged";
        case ReviewState::Confirmed: return "Confirmed";
        case ReviewState::Dismissed: return "Dismissed";
    }
    return "Flagged";
}

std::optional<ReviewState> review_state_from_string(const std::string& s) {
    if (s == "Flagged") return ReviewState::Flagged;
    if (s == "Confirmed") return ReviewState::Confirmed;
    if (s == "Dismissed") return ReviewState::Dismissed;
    return std::nullopt;
}

std::vector<ReviewCase> flag(const IsolationForest& forest,
                             const std::vector<ScoredComplaint>& complaints, double threshold) {
    std::vector<ReviewCase> cases;
    std::set<std::string> seen;  // one case per complaint id
    for (const ScoredComplaint& sc : complaints) {
        if (!seen.insert(sc.complaint_id).second) continue;
        double s = forest.score(sc.features);
        if (s > threshold)
            cases.push_back({sc.complaint_id, s, ReviewState::Flagged, ""});
    }
    std::sort(cases.begin(), cases.end(), [](const ReviewCase& a, const ReviewCase& b) {
        if (a.anomaly_score != b.anomaly_score) return a.anomaly_score > b.anomaly_score;
        return a.complaint_id < b.complaint_id;
    });
    return cases;
}

ReviewCase review(const ReviewCase& c, ReviewState decision, const std::string& note) {
    if (c.state != ReviewState::Flagged)
        throw TransitionError("review case " + c.complaint_id + " already decided (" +
                              to_string(c.state) + ")");
    if (decision == ReviewState::Flagged)
        throw TransitionError("review decision must be Confirmed or Dismissed");
    ReviewCase out = c;
    out.state = decision;
    out.reviewer_note = note;
    return out;
}

util::json review_case_to_json(const ReviewCase& c) {
    return util::json{{"complaint_id", c.complaint_id},
                      {"anomaly_score", c.anomaly_score},
                      {"state", to_string(c.state)},
                      {"reviewer_note", c.reviewer_note}};
}

ReviewCase review_case_from_json(const util::json& j) {
    ReviewCase c;
    c.complaint_id = util::require<std::string>(j, "complaint_id");
    c.anomaly_score = util::require<double>(j, "anomaly_score");
    auto st = review_state_from_string(util::require<std::string>(j, "state"));
    if (!st) throw StructuralError("unknown review state");
    c.state = *st;
    c.reviewer_note = util::get_or<std::string>(j, "reviewer_note", "");
    return c;
}

}  // namespace dhms::anomaly

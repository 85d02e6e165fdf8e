#pragma once

#include <string>
#include <vector>

#include "core/anomaly/forest.hpp"

namespace dhms::anomaly {

enum class ReviewState { Flagged, Confirmed, Dismissed };

std::string to_string(ReviewState s);
std::optional<ReviewState> review_state_from_string(const std::string& s);

struct ReviewCase {
    std::string complaint_id;
    double anomaly_score = 0.0;
    ReviewState state = ReviewState::Flagged;
    std::string reviewer_note;
};

struct ScoredComplaint {
    std::string complaint_id;
    FeatureVector features;
};

// One Flagged case per complaint scoring strictly above the threshold,
// ordered by descending score (ties by id).
std::vector<ReviewCase> flag(const IsolationForest& forest,
                             const std::vector<ScoredComplaint>& complaints, double threshold);

// Flagged -> Confirmed or Flagged -> Dismissed, exactly once.
ReviewCase review(const ReviewCase& c, ReviewState decision, const std::string& note);

util::json review_case_to_json(const ReviewCase& c);
ReviewCase review_case_from_json(const util::json& j);

}  // namespace dhms::anomaly

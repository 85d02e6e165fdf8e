#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/sentiment/lexicon.hpp"
#include "core/triage/complaint.hpp"

namespace dhms::anomaly {

// Fixed 7-dimensional complaint descriptor. Raw (un-normalized) values;
// min-max scaling happens inside the forest using training-set ranges.
struct FeatureVector {
    static constexpr std::size_t kDim = 7;

    double category_code = 0;     // stable category encoding
    double sentiment_score = 0;   // [-1, 1]
    double hour_of_day = 0;       // 0..23
    double day_of_week = 0;       // Monday = 0 .. Sunday = 6
    double text_length = 0;       // characters in the description
    double keyword_hits = 0;      // alert-term occurrences in the description
    double recurrence_count = 0;  // same category+room within the window

    std::array<double, kDim> as_array() const {
        return {category_code, sentiment_score,  hour_of_day,     day_of_week,
                text_length,   keyword_hits,     recurrence_count};
    }
    static FeatureVector from_array(const std::array<double, kDim>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    void validate() const;
};

// Default alert terms; the CLI lets deployments override them in config.
const std::vector<std::string>& default_keywords();

// `history` supplies the recurrence context: prior complaints (timestamps at
// or before c.created_at) with the same category and room inside `window`
// are counted; the complaint itself is excluded by id.
FeatureVector featurize(const triage::Complaint& c, const sentiment::SentimentResult& s,
                        const std::vector<triage::Complaint>& history,
                        const std::vector<std::string>& keywords, util::Duration window);

}  // namespace dhms::anomaly

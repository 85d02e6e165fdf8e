#include "core/anomaly/features.hpp"

#include <unordered_set>

#include "core/util/errors.hpp"
#include "core/util/textu.hpp"

namespace dhms::anomaly {

void FeatureVector::validate() const {
    if (sentiment_score < -1.0 || sentiment_score > 1.0)
        throw StructuralError("feature sentiment_score outside [-1,1]");
    if (hour_of_day < 0 || hour_of_day > 23)
        throw StructuralError("feature hour_of_day outside 0..23");
    if (day_of_week < 0 || day_of_week > 6)
        throw StructuralError("feature day_of_week outside 0..6");
    if (text_length < 0 || keyword_hits < 0 || recurrence_count < 0)
        throw StructuralError("negative count feature");
}

const std::vector<std::string>& default_keywords() {
    static const std::vector<std::string> kw = {"fire",  "flood", "urgent", "emergency", "smoke",
                                                "gas",   "spark", "shock",  "burst",     "theft"};
    return kw;
}

FeatureVector featurize(const triage::Complaint& c, const sentiment::SentimentResult& s,
                        const std::vector<triage::Complaint>& history,
                        const std::vector<std::string>& keywords, util::Duration window) {
    FeatureVector f;
    f.category_code = static_cast<double>(triage::category_code(c.category));
    f.sentiment_score = s.score;
    f.hour_of_day = static_cast<double>(util::hour_of_day(c.created_at));
    f.day_of_week = static_cast<double>(util::day_of_week(c.created_at));
    f.text_length = static_cast<double>(c.description.size());

    std::unordered_set<std::string> kw(keywords.begin(), keywords.end());
    std::size_t hits = 0;
    for (const std::string& tok : util::tokenize(c.description))
        if (kw.count(tok)) ++hits;
    f.keyword_hits = static_cast<double>(hits);

    std::size_t recurrence = 0;
    for (const triage::Complaint& prior : history) {
        if (prior.id == c.id) continue;
        if (prior.category != c.category || prior.room_id != c.room_id) continue;
        if (prior.created_at > c.created_at) continue;
        if (c.created_at - prior.created_at <= window) ++recurrence;
    }
    f.recurrence_count = static_cast<double>(recurrence);
    return f;
}

}  // namespace dhms::anomaly

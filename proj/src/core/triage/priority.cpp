#include "core/triage/priority.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "core/util/errors.hpp"

namespace dhms::triage {

PriorityWeights PriorityWeights::defaults() {
    PriorityWeights w;
    w.type_weights = {{Category::Electrical, 1.0}, {Category::Water, 0.8},
                      {Category::Plumbing, 0.8},   {Category::Sanitation, 0.7},
                      {Category::Civil, 0.7},      {Category::General, 0.6},
                      {Category::Other, 0.6}};
    return w;
}

void PriorityWeights::validate() const {
    double sum = coefficient_type + coefficient_impact + coefficient_age;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("priority coefficients must sum to 1.0, got " + std::to_string(sum));
    for (const auto& [cat, weight] : type_weights)
        if (weight < 0.0 || weight > 1.0)
            throw ValidationError("type weight for " + to_string(cat) + " outside [0,1]");
    if (age_saturation <= 0) throw ValidationError("age_saturation must be positive");
    if (impact_saturation < 1) throw ValidationError("impact_saturation must be >= 1");
}

double PriorityWeights::weight_for(Category c) const {
    auto it = type_weights.find(c);
    if (it != type_weights.end()) return it->second;
    static bool warned = false;
    if (!warned) {
        std::cerr << "triage: no weight configured for category '" << to_string(c)
                  << "', falling back to 'general'\n";
        warned = true;
    }
    auto gen = type_weights.find(Category::General);
    return gen != type_weights.end() ? gen->second : 0.6;
}

double priority_score(const Complaint& c, const PriorityWeights& w, util::Timestamp now) {
    if (now < c.created_at)
        throw StructuralError("priority_score: now precedes created_at of " + c.id);
    double t = w.weight_for(c.category);
    double impact = std::min(
        static_cast<double>(c.affected_count) / static_cast<double>(w.impact_saturation), 1.0);
    double age = std::min(static_cast<double>(now - c.created_at) /
                              static_cast<double>(w.age_saturation),
                          1.0);
    return w.coefficient_type * t + w.coefficient_impact * impact + w.coefficient_age * age;
}

std::vector<QueueEntry> triage_queue(const std::vector<Complaint>& complaints,
                                     const PriorityWeights& w, util::Timestamp now) {
    std::vector<QueueEntry> queue;
    for (const Complaint& c : complaints) {
        if (c.status != Lifecycle::Pending && c.status != Lifecycle::InProgress) continue;
        queue.push_back({c, priority_score(c, w, now)});
    }
    std::stable_sort(queue.begin(), queue.end(), [](const QueueEntry& a, const QueueEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.complaint.created_at != b.complaint.created_at)
            return a.complaint.created_at < b.complaint.created_at;
        return a.complaint.id < b.complaint.id;
    });
    return queue;
}

}  // namespace dhms::triage

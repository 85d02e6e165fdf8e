#include "core/anomaly/forest.hpp"

#include <algorithm>
#include <cmath>

#include "core/util/errors.hpp"
#include "core/util/parallel.hpp"
#include "core/util/rng.hpp"

namespace dhms::anomaly {

namespace {
constexpr double kEulerMascheroni = 0.5772156649;
using Point = std::array<double, FeatureVector::kDim>;
}  // namespace

double c_factor(std::size_t n) {
    if (n <= 1) return 0.0;
    if (n == 2) return 1.0;
    double h = std::log(static_cast<double>(n - 1)) + kEulerMascheroni;
    return 2.0 * h - 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
}

double IsolationTree::path_length(const Point& x) const {
    std::int32_t node = 0;
    double depth = 0.0;
    while (true) {
        const Node& n = nodes[static_cast<std::size_t>(node)];
        if (n.feature < 0) return depth + c_factor(n.size);
        node = x[static_cast<std::size_t>(n.feature)] < n.cut ? n.left : n.right;
        depth += 1.0;
    }
}

namespace {

struct TreeBuilder {
    const std::vector<Point>& points;
    std::uint32_t depth_limit;
    util::Rng& rng;
    IsolationTree tree;

    std::int32_t build(std::vector<std::size_t>& idx, std::uint32_t depth) {
        std::int32_t self = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back({});
        if (idx.size() <= 1 || depth >= depth_limit) {
            tree.nodes[self].size = static_cast<std::uint32_t>(idx.size());
            return self;
        }

        // Only features that actually vary inside this node are split
        // candidates; a node of duplicates becomes a leaf.
        std::array<double, FeatureVector::kDim> lo{}, hi{};
        std::vector<int> candidates;
        for (std::size_t f = 0; f < FeatureVector::kDim; ++f) {
            lo[f] = hi[f] = points[idx[0]][f];
            for (std::size_t i : idx) {
                lo[f] = std::min(lo[f], points[i][f]);
                hi[f] = std::max(hi[f], points[i][f]);
            }
            if (hi[f] > lo[f]) candidates.push_back(static_cast<int>(f));
        }
        if (candidates.empty()) {
            tree.nodes[self].size = static_cast<std::uint32_t>(idx.size());
            return self;
        }

        int feature = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
        double cut = rng.uniform(lo[static_cast<std::size_t>(feature)],
                                 hi[static_cast<std::size_t>(feature)]);

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx) {
            if (points[i][static_cast<std::size_t>(feature)] < cut)
                left.push_back(i);
            else
                right.push_back(i);
        }
        if (left.empty() || right.empty()) {  // cut landed on the extreme value
            tree.nodes[self].size = static_cast<std::uint32_t>(idx.size());
            return self;
        }

        idx.clear();
        idx.shrink_to_fit();
        tree.nodes[self].feature = feature;
        tree.nodes[self].cut = cut;
        tree.nodes[self].left = build(left, depth + 1);
        tree.nodes[self].right = build(right, depth + 1);
        return self;
    }
};

}  // namespace

std::array<double, FeatureVector::kDim> IsolationForest::normalize(const FeatureVector& x) const {
    Point raw = x.as_array();
    Point out{};
    for (std::size_t f = 0; f < FeatureVector::kDim; ++f) {
        double span = norm_max_[f] - norm_min_[f];
        out[f] = span > 0.0 ? (raw[f] - norm_min_[f]) / span : 0.5;
    }
    return out;
}

IsolationForest IsolationForest::fit(const std::vector<FeatureVector>& data, const Params& params,
                                     unsigned jobs) {
    if (data.size() < 2) throw FitError("isolation forest needs at least 2 samples");
    if (params.subsample < 2) throw FitError("subsample size (psi) must be >= 2");
    if (params.tree_count < 1) throw FitError("tree_count must be >= 1");
    if (params.threshold_percentile <= 0.0 || params.threshold_percentile > 100.0)
        throw FitError("threshold percentile must be in (0, 100]");

    IsolationForest forest;
    forest.params_ = params;
    forest.psi_effective_ = static_cast<std::uint32_t>(
        std::min<std::size_t>(params.subsample, data.size()));
    forest.c_psi_ = c_factor(forest.psi_effective_);

    for (std::size_t f = 0; f < FeatureVector::kDim; ++f) {
        forest.norm_min_[f] = data[0].as_array()[f];
        forest.norm_max_[f] = data[0].as_array()[f];
    }
    for (const FeatureVector& v : data) {
        Point p = v.as_array();
        for (std::size_t f = 0; f < FeatureVector::kDim; ++f) {
            forest.norm_min_[f] = std::min(forest.norm_min_[f], p[f]);
            forest.norm_max_[f] = std::max(forest.norm_max_[f], p[f]);
        }
    }

    std::vector<Point> points(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) points[i] = forest.normalize(data[i]);

    std::uint32_t depth_limit = static_cast<std::uint32_t>(
        std::ceil(std::log2(static_cast<double>(forest.psi_effective_))));

    forest.trees_.resize(params.tree_count);
    util::parallel_for(jobs, params.tree_count, [&](std::size_t t) {
        util::Rng rng = util::Rng::derive(params.seed, t);
        std::vector<std::size_t> sample =
            rng.sample_without_replacement(points.size(), forest.psi_effective_);
        TreeBuilder builder{points, depth_limit, rng, {}};
        builder.build(sample, 0);
        forest.trees_[t] = std::move(builder.tree);
    });

    // Threshold at the configured percentile of training scores
    // (nearest-rank), so roughly (100-p)% of clean data gets flagged.
    std::vector<double> scores(data.size());
    util::parallel_for(jobs, data.size(), [&](std::size_t i) { scores[i] = forest.score(data[i]); });
    std::sort(scores.begin(), scores.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(params.threshold_percentile / 100.0 * static_cast<double>(scores.size())));
    rank = std::min(std::max<std::size_t>(rank, 1), scores.size());
    forest.threshold_ = scores[rank - 1];
    return forest;
}

double IsolationForest::mean_path_length(const FeatureVector& x) const {
    if (trees_.empty()) throw StructuralError("isolation forest is not fitted");
    Point p = normalize(x);
    double total = 0.0;
    for (const IsolationTree& t : trees_) total += t.path_length(p);
    return total / static_cast<double>(trees_.size());
}

double IsolationForest::score(const FeatureVector& x) const {
    return std::pow(2.0, -mean_path_length(x) / c_psi_);
}

util::json IsolationForest::to_json() const {
    util::json jtrees = util::json::array();
    for (const IsolationTree& t : trees_) {
        util::json jnodes = util::json::array();
        for (const IsolationTree::Node& n : t.nodes)
            jnodes.push_back({{"f", n.feature},
                              {"cut", n.cut},
                              {"l", n.left},
                              {"r", n.right},
                              {"size", n.size}});
        jtrees.push_back(std::move(jnodes));
    }
    return util::json{{"schema_version", 1},
                      {"kind", "isolation_forest"},
                      {"subsample", params_.subsample},
                      {"tree_count", params_.tree_count},
                      {"seed", params_.seed},
                      {"threshold_percentile", params_.threshold_percentile},
                      {"psi_effective", psi_effective_},
                      {"c_psi", c_psi_},
                      {"threshold", threshold_},
                      {"norm_min", norm_min_},
                      {"norm_max", norm_max_},
                      {"trees", std::move(jtrees)}};
}

IsolationForest IsolationForest::from_json(const util::json& j) {
    if (util::get_or<std::string>(j, "kind", "") != "isolation_forest")
        throw StructuralError("not an isolation forest document");
    IsolationForest forest;
    forest.params_.subsample = util::require<std::uint32_t>(j, "subsample");
    forest.params_.tree_count = util::require<std::uint32_t>(j, "tree_count");
    forest.params_.seed = util::require<std::uint64_t>(j, "seed");
    forest.params_.threshold_percentile = util::require<double>(j, "threshold_percentile");
    forest.psi_effective_ = util::require<std::uint32_t>(j, "psi_effective");
    forest.c_psi_ = util::require<double>(j, "c_psi");
    forest.threshold_ = util::require<double>(j, "threshold");
    auto mins = util::require<std::vector<double>>(j, "norm_min");
    auto maxs = util::require<std::vector<double>>(j, "norm_max");
    if (mins.size() != FeatureVector::kDim || maxs.size() != FeatureVector::kDim)
        throw StructuralError("normalization range dimension mismatch");
    std::copy(mins.begin(), mins.end(), forest.norm_min_.begin());
    std::copy(maxs.begin(), maxs.end(), forest.norm_max_.begin());
    for (const util::json& jt : util::require<util::json>(j, "trees")) {
        IsolationTree t;
        for (const util::json& jn : jt) {
            IsolationTree::Node n;
            n.feature = util::require<int>(jn, "f");
            n.cut = util::require<double>(jn, "cut");
            n.left = util::require<std::int32_t>(jn, "l");
            n.right = util::require<std::int32_t>(jn, "r");
            n.size = util::require<std::uint32_t>(jn, "size");
            t.nodes.push_back(n);
        }
        if (t.nodes.empty()) throw StructuralError("empty tree in forest document");
        forest.trees_.push_back(std::move(t));
    }
    if (forest.trees_.empty()) throw StructuralError("forest document has no trees");
    return forest;
}

}  // namespace dhms::anomaly

#pragma once

#include <cstdint>
#include <vector>

#include "core/anomaly/features.hpp"
#include "core/util/jsonu.hpp"

namespace dhms::anomaly {

// One binary isolation tree in flat storage. feature < 0 marks a leaf; the
// leaf keeps the number of training points that fell into it so that path
// lengths can be extended by the expected depth of an unbuilt subtree.
struct IsolationTree {
    struct Node {
        int feature = -1;
        double cut = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint32_t size = 0;
    };
    std::vector<Node> nodes;  // nodes[0] is the root

    double path_length(const std::array<double, FeatureVector::kDim>& x) const;
};

// Average unsuccessful-search path length in a BST of n points; normalizes
// raw path lengths into anomaly scores. c(1) = 0 and c(2) = 1 by convention.
double c_factor(std::size_t n);

class IsolationForest {
  public:
    struct Params {
        std::uint32_t subsample = 256;           // psi
        std::uint32_t tree_count = 100;
        std::uint64_t seed = 0;
        double threshold_percentile = 95.0;      // over training scores
    };

    // Each tree draws min(psi, n) points without replacement from a
    // per-tree derived seed stream, then splits on a random non-constant
    // feature at a uniform cut until points are isolated, duplicated, or the
    // depth cap ceil(log2 psi) is hit. Requires n >= 2 and psi >= 2.
    static IsolationForest fit(const std::vector<FeatureVector>& data, const Params& params,
                               unsigned jobs = 1);

    // s(x) = 2^(-E[h(x)] / c(psi_effective)), always in (0,1).
    double score(const FeatureVector& x) const;
    double mean_path_length(const FeatureVector& x) const;

    double threshold() const { return threshold_; }
    std::uint32_t psi_effective() const { return psi_effective_; }
    std::uint32_t tree_count() const { return static_cast<std::uint32_t>(trees_.size()); }
    const Params& params() const { return params_; }
    double normalization_constant() const { return c_psi_; }

    util::json to_json() const;
    static IsolationForest from_json(const util::json& j);

  private:
    Params params_;
    std::uint32_t psi_effective_ = 0;
    double c_psi_ = 1.0;
    double threshold_ = 0.5;
    std::array<double, FeatureVector::kDim> norm_min_{};
    std::array<double, FeatureVector::kDim> norm_max_{};
    std::vector<IsolationTree> trees_;

    std::array<double, FeatureVector::kDim> normalize(const FeatureVector& x) const;
};

}  // namespace dhms::anomaly

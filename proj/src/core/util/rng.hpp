#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace dhms::util {

// SplitMix64. Fixed constants so that seeded runs reproduce bit-for-bit on
// every platform; std::mt19937 distributions are implementation-defined and
// therefore unusable for cross-platform fixtures.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Derive an independent stream, e.g. one per tree or per block.
    Rng split(std::uint64_t stream) {
        return Rng(next_u64() ^ (0xA5A5A5A55A5A5A5AULL + stream * 0x9E3779B97F4A7C15ULL));
    }
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed);
        std::uint64_t mix = r.next_u64();
        return Rng(mix ^ (stream * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
    }

    // Uniform in [0, bound) by rejection; unbiased and portable.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive bounds
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal(double mean = 0.0, double sigma = 1.0) {
        // Box-Muller; the spare is discarded to keep the stream position
        // independent of call history.
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * M_PI * u2);
    }

    // Knuth's product method; adequate for the weekly rates used here.
    std::uint32_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        double l = std::exp(-lambda);
        std::uint32_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > l);
        return k - 1;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), order arbitrary but deterministic.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

  private:
    std::uint64_t state_;
};

// Zipf sampler over ranks 1..n with exponent s, built once per generator.
class ZipfSampler {
  public:
    ZipfSampler(std::size_t n, double s) : cdf_(n) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += 1.0 / std::pow(static_cast<double>(i + 1), s);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += 1.0 / std::pow(static_cast<double>(i + 1), s) / total;
            cdf_[i] = acc;
        }
        if (!cdf_.empty()) cdf_.back() = 1.0;
    }

    // Returns a 0-based rank.
    std::size_t draw(Rng& rng) const {
        double u = rng.uniform();
        std::size_t lo = 0, hi = cdf_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cdf_[mid] < u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < cdf_.size() ? lo : cdf_.size() - 1;
    }

  private:
    std::vector<double> cdf_;
};

}  // namespace dhms::util

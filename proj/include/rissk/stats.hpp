#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rissk {

// Sample container with histogram/moment accessors used by the
// distribution-fit experiments.
class EmpiricalDistribution {
  public:
    explicit EmpiricalDistribution(std::vector<double> samples, int bin_count = 100)
        : samples_(std::move(samples)), bins_(bin_count) {
        if (samples_.empty()) throw std::domain_error("EmpiricalDistribution: no samples");
        if (bins_ < 1) throw std::domain_error("EmpiricalDistribution: bad bin count");
        sorted_ = samples_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    const std::vector<double>& samples() const { return samples_; }
    const std::vector<double>& sorted() const { return sorted_; }
    size_t size() const { return samples_.size(); }
    int bin_count() const { return bins_; }

    double mean() const {
        return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
    }

    double variance() const {
        const double m = mean();
        double acc = 0.0;
        for (double x : samples_) acc += (x - m) * (x - m);
        return acc / static_cast<double>(samples_.size());
    }

    // Normalized histogram over [min, max]; masses sum to 1.
    std::vector<double> histogram() const {
        std::vector<double> h(static_cast<size_t>(bins_), 0.0);
        const double lo = sorted_.front(), hi = sorted_.back();
        const double w = (hi > lo) ? (hi - lo) : 1.0;
        for (double x : samples_) {
            int b = static_cast<int>((x - lo) / w * bins_);
            b = std::clamp(b, 0, bins_ - 1);
            h[static_cast<size_t>(b)] += 1.0;
        }
        for (double& v : h) v /= static_cast<double>(samples_.size());
        return h;
    }

    // Empirical CDF, right-continuous convention.
    double ecdf(double x) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

  private:
    std::vector<double> samples_;
    std::vector<double> sorted_;
    int bins_;
};

// Kolmogorov-Smirnov sup distance between the empirical CDF and a model CDF.
inline double ks_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf) {
    const auto& x = emp.sorted();
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double c = cdf(x[i]);
        d = std::max(d, std::fabs(c - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
    }
    return d;
}

// 95% half-width for a proportion. Normal approximation, Wilson fallback
// for low counts where the normal interval is unreliable.
inline double ci95_halfwidth(uint64_t errors, uint64_t total) {
    if (total == 0) return 0.0;
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z = 1.959963984540054;
    if (errors >= 30) return z * std::sqrt(p * (1.0 - p) / n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
}

}  // namespace rissk
